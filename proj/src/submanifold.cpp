#include "curv4/submanifold.hpp"

#include <cmath>
#include <numbers>

#include "curv4/errors.hpp"

namespace curv4 {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, 2 * kPi);
    if (a <= -kPi) a += 2 * kPi;
    if (a > kPi) a -= 2 * kPi;
    return a;
}

Eigen::Matrix2d rot_generator() {
    Eigen::Matrix2d j;
    j << 0, -1, 1, 0;
    return j;
}

// connection pulled back to the curve parameter: A(t) = a_u u'(t) + a_v v'(t)
double pullback(const FiberSurface& s, const Eigen::Vector2d& p, const Eigen::Vector2d& vel) {
    const SurfaceOneForm a = normal_connection(s, p(0), p(1));
    return a.a_u * vel(0) + a.a_v * vel(1);
}

Eigen::Matrix2d transport_rk4(const FiberSurface& s, const Eigen::Vector2d& p,
                              const Eigen::Vector2d& q, int steps) {
    // frame ODE F' = A(t) J F along the straight segment p -> q
    const Eigen::Matrix2d j = rot_generator();
    const Eigen::Vector2d vel = q - p;
    Eigen::Matrix2d f = Eigen::Matrix2d::Identity();
    const double h = 1.0 / steps;
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        auto rhs = [&](double tt, const Eigen::Matrix2d& m) {
            const Eigen::Vector2d x = p + tt * vel;
            return Eigen::Matrix2d(pullback(s, x, vel) * (j * m));
        };
        const Eigen::Matrix2d k1 = rhs(t, f);
        const Eigen::Matrix2d k2 = rhs(t + 0.5 * h, f + 0.5 * h * k1);
        const Eigen::Matrix2d k3 = rhs(t + 0.5 * h, f + 0.5 * h * k2);
        const Eigen::Matrix2d k4 = rhs(t + h, f + h * k3);
        f += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return f;
}

double frame_angle(const Eigen::Matrix2d& f) { return std::atan2(f(1, 0), f(0, 0)); }

}  // namespace

FiberSurface page_fiber_surface(const CoframeField& page, double theta0, double phi0) {
    FiberSurface s;
    s.metric = page;
    s.coords = {0, 3};  // (r, psi)
    s.base = Vec4(0.0, theta0, phi0, 0.0);
    s.bundle = {2, 3};
    s.tangent = {0, 1};
    if (theta0 < page.chart.effective(1).lo || theta0 > page.chart.effective(1).hi)
        throw ParameterError("page_fiber_surface: theta0 inside the chart margin");
    return s;
}

FiberSurface t4_surface(const CoframeField& t4) {
    FiberSurface s;
    s.metric = t4;
    s.coords = {0, 3};
    s.base = Vec4(0.0, kPi, kPi, 0.0);
    s.bundle = {1, 2};
    s.tangent = {0, 3};
    return s;
}

FiberSurface s4_contrast_surface(const CoframeField& s4, double chi1, double chi2) {
    FiberSurface s;
    s.metric = s4;
    s.coords = {2, 3};  // (chi3, chi4) vary: a totally geodesic round 2-sphere
    s.base = Vec4(chi1, chi2, 0.0, 0.0);
    s.bundle = {2, 3};  // its own tangent plane
    s.tangent = {2, 3};
    return s;
}

SurfaceOneForm normal_connection(const FiberSurface& s, double u, double v) {
    const Vec4 x = s.point(u, v);
    if (!s.metric.chart.in_domain(x))
        throw ParameterError("normal_connection: surface point outside chart");
    const ConnectionAtPoint conn = connection_at(s.metric, x);
    const Eigen::Matrix<double, 6, 4> w = conn.coordinate_coeff(s.metric.coeff(x));
    auto [slot, sign] = wedge_slot(s.bundle[0], s.bundle[1]);
    return {sign * w(slot, s.coords[0]), sign * w(slot, s.coords[1])};
}

double normal_curvature(const FiberSurface& s, double u, double v, double fd_step) {
    if (fd_step <= 0) throw ParameterError("normal_curvature: fd_step must be positive");
    const Vec4 x = s.point(u, v);
    if (s.metric.chart.boundary_distance(x) <= fd_step)
        throw StepTooLargeError("normal_curvature: fd_step exceeds distance to boundary");

    auto a_v_at = [&](double uu) { return normal_connection(s, uu, v).a_v; };
    auto a_u_at = [&](double vv) { return normal_connection(s, u, vv).a_u; };
    auto rich = [](auto&& f, double c, double h) {
        const double dh = (f(c + h) - f(c - h)) / (2 * h);
        const double dh2 = (f(c + 0.5 * h) - f(c - 0.5 * h)) / h;
        return (4.0 * dh2 - dh) / 3.0;
    };
    return rich(a_v_at, u, fd_step) - rich(a_u_at, v, fd_step);
}

Loop rectangle_loop(double u0, double u1, double v0, double v1) {
    return {{u0, v0}, {u1, v0}, {u1, v1}, {u0, v1}, {u0, v0}};
}

Eigen::Matrix2d transport_segment(const FiberSurface& s, const Eigen::Vector2d& p,
                                  const Eigen::Vector2d& q, int steps) {
    return transport_rk4(s, p, q, steps);
}

HolonomyResult holonomy_loop(const FiberSurface& s, const Loop& loop, int steps_per_edge) {
    HolonomyResult out;
    if (loop.size() < 2) return out;  // degenerate loop: identity transport
    if ((loop.front() - loop.back()).norm() > 1e-12)
        throw ParameterError("holonomy_loop: loop is not closed");

    auto run = [&](int steps) {
        Eigen::Matrix2d f = Eigen::Matrix2d::Identity();
        for (size_t k = 0; k + 1 < loop.size(); ++k) {
            if ((loop[k + 1] - loop[k]).norm() == 0.0) continue;
            f = transport_rk4(s, loop[k], loop[k + 1], steps) * f;
        }
        return f;
    };

    const Eigen::Matrix2d f = run(steps_per_edge);
    const Eigen::Matrix2d fh = run(std::max(1, steps_per_edge / 2));
    out.angle = wrap_angle(frame_angle(f));
    out.steps = steps_per_edge;
    out.est_error = std::abs(wrap_angle(frame_angle(f) - frame_angle(fh)));
    if (out.est_error > 1e-6)
        throw StepCountError("holonomy_loop: integrator error estimate exceeds 1e-6");
    return out;
}

double parallel_section_defect(const FiberSurface& s, int nu, int nv, int steps_per_edge) {
    if (nu < 2 || nv < 2) throw ParameterError("parallel_section_defect: grid must be >= 2x2");
    const Interval ur = s.u_range(), vr = s.v_range();
    auto up = [&](int i) { return ur.lo + (ur.hi - ur.lo) * i / (nu - 1); };
    auto vp = [&](int j) { return vr.lo + (vr.hi - vr.lo) * j / (nv - 1); };

    std::vector<Eigen::Matrix2d> frame(static_cast<size_t>(nu) * nv);
    auto at = [&](int i, int j) -> Eigen::Matrix2d& { return frame[i * nv + j]; };

    // spanning tree: u-axis first (j = 0), then each v-column
    at(0, 0) = Eigen::Matrix2d::Identity();
    for (int i = 1; i < nu; ++i)
        at(i, 0) = transport_rk4(s, {up(i - 1), vp(0)}, {up(i), vp(0)}, steps_per_edge) *
                   at(i - 1, 0);
    for (int i = 0; i < nu; ++i)
        for (int j = 1; j < nv; ++j)
            at(i, j) = transport_rk4(s, {up(i), vp(j - 1)}, {up(i), vp(j)}, steps_per_edge) *
                       at(i, j - 1);

    // remaining edges: u-direction links at j > 0
    double defect = 0.0;
    for (int i = 0; i + 1 < nu; ++i)
        for (int j = 1; j < nv; ++j) {
            const Eigen::Matrix2d t =
                transport_rk4(s, {up(i), vp(j)}, {up(i + 1), vp(j)}, steps_per_edge);
            defect = std::max(defect, (t * at(i, j) - at(i + 1, j)).norm());
        }
    return defect;
}

}  // namespace curv4
