#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <utility>

#include "curv4/errors.hpp"

namespace curv4 {

using Real = double;
using Vec4 = Eigen::Vector4d;
using Vector3 = Eigen::Vector3d;
using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix3 = Eigen::Matrix3d;
using Matrix4 = Eigen::Matrix4d;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

/// A 2-form on an oriented 4-dimensional inner-product space, stored by its
/// components in the ordered wedge basis
///
///   (e0^e1, e0^e2, e0^e3, e2^e3, e3^e1, e1^e2)
///
/// of an orthonormal coframe {e0,e1,e2,e3}.  The basis is orthonormal for the
/// induced inner product, slot A and slot A+3 are Hodge duals of each other,
/// and the volume form is e0^e1^e2^e3.
using TwoForm = Vector6;

inline constexpr std::array<int, 6> kWedgeI = {0, 0, 0, 2, 3, 1};
inline constexpr int kWedgeJ[6] = {1, 2, 3, 3, 1, 2};

/// slot of the ordered pair (i,j), i<j or i>j, with the sign of the permutation
inline std::pair<int, double> wedge_slot(int i, int j) {
    for (int a = 0; a < 6; ++a) {
        if (kWedgeI[a] == i && kWedgeJ[a] == j) return {a, 1.0};
        if (kWedgeI[a] == j && kWedgeJ[a] == i) return {a, -1.0};
    }
    return {-1, 0.0};  // i == j
}

inline double form_component(const TwoForm& phi, int i, int j) {
    if (i == j) return 0.0;
    auto [a, s] = wedge_slot(i, j);
    return s * phi(a);
}

/// antisymmetric matrix Phi with Phi(i,j) = phi(e_i, e_j)
inline Matrix4 as_matrix(const TwoForm& phi) {
    Matrix4 m = Matrix4::Zero();
    for (int a = 0; a < 6; ++a) {
        m(kWedgeI[a], kWedgeJ[a]) = phi(a);
        m(kWedgeJ[a], kWedgeI[a]) = -phi(a);
    }
    return m;
}

inline TwoForm from_matrix(const Matrix4& m) {
    TwoForm phi;
    for (int a = 0; a < 6; ++a) phi(a) = m(kWedgeI[a], kWedgeJ[a]);
    return phi;
}

inline TwoForm wedge(const Vec4& v, const Vec4& w) {
    TwoForm phi;
    for (int a = 0; a < 6; ++a) {
        const int i = kWedgeI[a], j = kWedgeJ[a];
        phi(a) = v(i) * w(j) - v(j) * w(i);
    }
    return phi;
}

inline TwoForm hodge_star(const TwoForm& phi) {
    TwoForm out;
    out.head<3>() = phi.tail<3>();
    out.tail<3>() = phi.head<3>();
    return out;
}

/// phi = sd + asd with *sd = sd, *asd = -asd
inline std::pair<TwoForm, TwoForm> sd_asd_split(const TwoForm& phi) {
    const TwoForm star = hodge_star(phi);
    return {0.5 * (phi + star), 0.5 * (phi - star)};
}

/// Change of basis to (sigma+_1..3, sigma-_1..3) with
/// sigma+-_i = (e0^ei +- dual)/sqrt(2).  The matrix is a symmetric orthogonal
/// involution, so it is its own inverse.
inline const Matrix6& sigma_basis_matrix() {
    static const Matrix6 p = [] {
        Matrix6 m = Matrix6::Zero();
        const double c = 1.0 / std::sqrt(2.0);
        for (int i = 0; i < 3; ++i) {
            m(i, i) = c;
            m(i, i + 3) = c;
            m(i + 3, i) = c;
            m(i + 3, i + 3) = -c;
        }
        return m;
    }();
    return p;
}

inline Vector6 sigma_from_wedge(const TwoForm& phi) { return sigma_basis_matrix() * phi; }
inline TwoForm wedge_from_sigma(const Vector6& s) { return sigma_basis_matrix() * s; }

/// self-dual form with the given sigma+ coordinates
inline TwoForm sd_form(const Vector3& c) {
    Vector6 s;
    s << c, Vector3::Zero();
    return wedge_from_sigma(s);
}

/// anti-self-dual form with the given sigma- coordinates
inline TwoForm asd_form(const Vector3& c) {
    Vector6 s;
    s << Vector3::Zero(), c;
    return wedge_from_sigma(s);
}

inline Vector3 sd_coords(const TwoForm& phi) { return sigma_from_wedge(phi).head<3>(); }
inline Vector3 asd_coords(const TwoForm& phi) { return sigma_from_wedge(phi).tail<3>(); }

/// coefficient of the volume form in phi ^ chi
inline double wedge_pairing(const TwoForm& phi, const TwoForm& chi) {
    return phi.head<3>().dot(chi.tail<3>()) + phi.tail<3>().dot(chi.head<3>());
}

/// The oriented plane span{X,Y} as the pair of its self-dual and
/// anti-self-dual parts; for a unit decomposable form both have norm
/// exactly 1/sqrt(2).
inline std::pair<TwoForm, TwoForm> plane_to_forms(const Vec4& x, const Vec4& y) {
    TwoForm u = wedge(x, y);
    const double n = u.norm();
    if (n < 1e-10) throw DegeneratePlaneError("plane_to_forms: |X^Y| < 1e-10");
    u /= n;
    return sd_asd_split(u);
}

/// Symmetric operator on 2-forms, stored in the (sigma+, sigma-) block basis;
/// the upper-left 3x3 block maps the self-dual part to itself.
struct OperatorOnForms {
    Matrix6 sigma = Matrix6::Zero();

    static OperatorOnForms from_wedge_matrix(const Matrix6& mw) {
        const Matrix6& p = sigma_basis_matrix();
        return {p * mw * p};
    }

    Matrix6 wedge_matrix() const {
        const Matrix6& p = sigma_basis_matrix();
        return p * sigma * p;
    }

    /// acts on wedge-basis components
    TwoForm apply(const TwoForm& phi) const {
        return wedge_from_sigma(sigma * sigma_from_wedge(phi));
    }

    /// <R a, b> in the induced inner product
    double pair(const TwoForm& a, const TwoForm& b) const {
        return sigma_from_wedge(b).dot(sigma * sigma_from_wedge(a));
    }
};

}  // namespace curv4
