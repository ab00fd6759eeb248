#pragma once

#include <vector>

#include "curv4/connection.hpp"

namespace curv4 {

/// A coordinate 2-surface inside a chart together with the SO(2) frame
/// sub-bundle whose induced connection gets transported along it.  For the
/// fiber spheres of the page chart the surface varies (r, psi), the surface
/// tangents are frame directions {0,1} and the transported bundle is the
/// normal pair {2,3}; the S^4 contrast surface transports the tangent pair of
/// a totally geodesic 2-sphere instead.
struct FiberSurface {
    CoframeField metric;
    std::array<int, 2> coords{0, 3};   // varying chart coordinate indices (u, v)
    Vec4 base = Vec4::Zero();          // values of the fixed coordinates
    std::array<int, 2> bundle{2, 3};   // frame pair carried by the transport
    std::array<int, 2> tangent{0, 1};  // frame pair spanning the surface

    Vec4 point(double u, double v) const {
        Vec4 x = base;
        x(coords[0]) = u;
        x(coords[1]) = v;
        return x;
    }
    Interval u_range() const { return metric.chart.effective(coords[0]); }
    Interval v_range() const { return metric.chart.effective(coords[1]); }
};

/// Hirzebruch-fiber sphere of the page chart: theta, phi held fixed,
/// (r, psi) varying, normal bundle spanned by frame directions {2,3}
FiberSurface page_fiber_surface(const CoframeField& page, double theta0, double phi0);

/// flat-chart analogue (any coordinate 2-plane of the 4-torus)
FiberSurface t4_surface(const CoframeField& t4);

/// Totally geodesic 2-sphere {chi1, chi2 fixed} of the round S^4 carrying its
/// own tangent SO(2); its transport holonomy is the enclosed-curvature
/// integral, the contrast case to a flat bundle.
FiberSurface s4_contrast_surface(const CoframeField& s4, double chi1, double chi2);

/// restriction of omega_{bundle} to the surface: coefficients on (du, dv)
struct SurfaceOneForm {
    double a_u = 0.0;
    double a_v = 0.0;
};
SurfaceOneForm normal_connection(const FiberSurface& s, double u, double v);

/// du^dv coefficient of the curvature of the restricted connection, by
/// 4th-order central differences of normal_connection
double normal_curvature(const FiberSurface& s, double u, double v, double fd_step);

struct HolonomyResult {
    double angle = 0.0;  // net rotation, reported in (-pi, pi]
    int steps = 0;
    double est_error = 0.0;
};

using Loop = std::vector<Eigen::Vector2d>;  // closed polyline in (u, v)

Loop rectangle_loop(double u0, double u1, double v0, double v1);

/// Parallel transport of the SO(2) frame around the loop with a fixed-step
/// 4th-order integrator; throws StepCountError when the step-halving error
/// estimate exceeds 1e-6.
HolonomyResult holonomy_loop(const FiberSurface& s, const Loop& loop, int steps_per_edge = 512);

/// rotation matrix transported along the straight segment from p to q
Eigen::Matrix2d transport_segment(const FiberSurface& s, const Eigen::Vector2d& p,
                                  const Eigen::Vector2d& q, int steps);

/// Transport a frame from the grid origin along a fixed spanning tree, then
/// report the largest mismatch across the remaining grid edges
/// (path-independence defect).
double parallel_section_defect(const FiberSurface& s, int nu, int nv, int steps_per_edge = 64);

}  // namespace curv4
