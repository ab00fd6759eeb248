#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "curv4/forms.hpp"
#include "oracles.hpp"

using namespace curv4;

namespace {

TwoForm basis_form(int slot) {
    TwoForm t = TwoForm::Zero();
    t(slot) = 1;
    return t;
}

TwoForm sigma_plus(int i) {
    Vector3 c = Vector3::Zero();
    c(i) = 1;
    return sd_form(c);
}

TwoForm sigma_minus(int i) {
    Vector3 c = Vector3::Zero();
    c(i) = 1;
    return asd_form(c);
}

}  // namespace

TEST_CASE("wedge on basis vectors") {
    const Vec4 e0 = Vec4::Unit(0), e1 = Vec4::Unit(1);
    CHECK((wedge(e0, e1) - basis_form(0)).norm() == 0.0);
    CHECK(wedge(e1, e1).norm() == 0.0);
    CHECK((wedge(e1, e0) + basis_form(0)).norm() == 0.0);
}

TEST_CASE("wedge norm against the Gram determinant") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 500; ++trial) {
        Vec4 v, w;
        for (int i = 0; i < 4; ++i) {
            v(i) = n(rng);
            w(i) = n(rng);
        }
        const double gram = v.squaredNorm() * w.squaredNorm() - std::pow(v.dot(w), 2);
        CHECK(wedge(v, w).squaredNorm() == doctest::Approx(gram).epsilon(1e-12));
    }
    // random orthonormal pair has unit wedge
    for (int trial = 0; trial < 100; ++trial) {
        Vec4 v = oracles::random_unit(rng);
        Vec4 w = oracles::random_unit(rng);
        w = (w - v.dot(w) * v).normalized();
        CHECK(std::abs(wedge(v, w).norm() - 1.0) < 1e-13);
    }
}

TEST_CASE("wedge is bilinear and antisymmetric") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 200; ++trial) {
        Vec4 u, v, w;
        for (int i = 0; i < 4; ++i) {
            u(i) = n(rng);
            v(i) = n(rng);
            w(i) = n(rng);
        }
        const double a = n(rng), b = n(rng);
        CHECK((wedge(u, v) + wedge(v, u)).norm() < 1e-13);
        CHECK((wedge(a * u + b * v, w) - a * wedge(u, w) - b * wedge(v, w)).norm() < 1e-13);
    }
}

TEST_CASE("hodge star on basis forms and sigma eigenforms") {
    CHECK((hodge_star(basis_form(0)) - basis_form(3)).norm() == 0.0);  // *(e0^e1) = e2^e3
    for (int i = 0; i < 3; ++i) {
        CHECK((hodge_star(sigma_plus(i)) - sigma_plus(i)).norm() < 1e-15);
        CHECK((hodge_star(sigma_minus(i)) + sigma_minus(i)).norm() < 1e-15);
    }
}

TEST_CASE("hodge star is an involution and sigma bases are orthonormal") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 100; ++trial) {
        TwoForm phi;
        for (int a = 0; a < 6; ++a) phi(a) = n(rng);
        CHECK((hodge_star(hodge_star(phi)) - phi).norm() < 1e-14);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(sigma_plus(i).dot(sigma_plus(j)) == doctest::Approx(i == j ? 1 : 0));
            CHECK(sigma_minus(i).dot(sigma_minus(j)) == doctest::Approx(i == j ? 1 : 0));
            CHECK(sigma_plus(i).dot(sigma_minus(j)) == doctest::Approx(0));
        }
}

TEST_CASE("sd/asd split") {
    const auto [sd, asd] = sd_asd_split(basis_form(0));
    CHECK((sd - 0.5 * (basis_form(0) + basis_form(3))).norm() < 1e-15);
    CHECK((asd - 0.5 * (basis_form(0) - basis_form(3))).norm() < 1e-15);

    const auto [s2, a2] = sd_asd_split(sigma_minus(1));
    CHECK(s2.norm() < 1e-15);
    CHECK((a2 - sigma_minus(1)).norm() < 1e-15);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 200; ++trial) {
        TwoForm phi;
        for (int a = 0; a < 6; ++a) phi(a) = n(rng);
        const auto [p, m] = sd_asd_split(phi);
        CHECK((p + m - phi).norm() < 1e-14);
        CHECK((hodge_star(p) - p).norm() < 1e-14);
        CHECK((hodge_star(m) + m).norm() < 1e-14);
        CHECK(phi.squaredNorm() ==
              doctest::Approx(p.squaredNorm() + m.squaredNorm()).epsilon(1e-13));
    }
}

TEST_CASE("plane_to_forms basics") {
    const Vec4 e0 = Vec4::Unit(0), e1 = Vec4::Unit(1);
    const auto [alpha, beta] = plane_to_forms(e0, e1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(alpha.norm() == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(beta.norm() == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK((alpha - inv_sqrt2 * sigma_plus(0)).norm() < 1e-14);

    // J-invariant plane for the reference structure (J e0 = e1, J e2 = e3)
    // carries omega/2 as its self-dual part
    const TwoForm omega = basis_form(0) + basis_form(3);
    CHECK((alpha - 0.5 * omega).norm() < 1e-14);

    // only the oriented span matters
    const auto [a2, b2] = plane_to_forms(e0, (e0 + e1).eval());
    CHECK((a2 - alpha).norm() < 1e-12);
    CHECK((b2 - beta).norm() < 1e-12);

    CHECK_THROWS_AS(plane_to_forms(e0, (2.0 * e0).eval()), DegeneratePlaneError);
}

TEST_CASE("plane_to_forms: norms and basis invariance on random planes") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
        const Vec4 x = oracles::random_unit(rng);
        Vec4 y = oracles::random_unit(rng);
        if (wedge(x, y).norm() < 1e-3) continue;
        const auto [a, b] = plane_to_forms(x, y);
        CHECK(std::abs(a.norm() - 1.0 / std::sqrt(2.0)) < 1e-12);
        CHECK(std::abs(b.norm() - 1.0 / std::sqrt(2.0)) < 1e-12);

        // orientation-preserving change of basis of the same plane
        const double p = u(rng), q = n(rng), s = u(rng);
        const Vec4 x2 = p * x;
        const Vec4 y2 = q * x + s * y;  // det = p s > 0
        const auto [a2, b2] = plane_to_forms(x2, y2);
        CHECK((a2 - a).norm() < 1e-12);
        CHECK((b2 - b).norm() < 1e-12);

        // orientation-reversing swap flips the form
        const auto [a3, b3] = plane_to_forms(y, x);
        CHECK((a3 + a).norm() < 1e-12);
    }
}

TEST_CASE("operator on forms: basis change round trip and pairing") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> n;
    Matrix6 mw;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) mw(i, j) = n(rng);
    mw = (0.5 * (mw + mw.transpose())).eval();

    const OperatorOnForms op = OperatorOnForms::from_wedge_matrix(mw);
    CHECK((op.wedge_matrix() - mw).norm() < 1e-12);
    CHECK((op.sigma - op.sigma.transpose()).norm() < 1e-12);

    for (int trial = 0; trial < 50; ++trial) {
        TwoForm a, b;
        for (int i = 0; i < 6; ++i) {
            a(i) = n(rng);
            b(i) = n(rng);
        }
        CHECK(op.pair(a, b) == doctest::Approx(b.dot(mw * a)).epsilon(1e-12));
        CHECK(op.pair(a, b) == doctest::Approx(op.pair(b, a)).epsilon(1e-12));
        CHECK((op.apply(a) - mw * a).norm() < 1e-12);
    }
}

TEST_CASE("wedge pairing detects orientation") {
    // sigma+ forms square to +dvol, sigma- to -dvol
    for (int i = 0; i < 3; ++i) {
        CHECK(wedge_pairing(sigma_plus(i), sigma_plus(i)) == doctest::Approx(1.0));
        CHECK(wedge_pairing(sigma_minus(i), sigma_minus(i)) == doctest::Approx(-1.0));
    }
    const TwoForm omega = basis_form(0) + basis_form(3);
    CHECK(wedge_pairing(omega, omega) == doctest::Approx(2.0));
}
