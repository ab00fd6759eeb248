#pragma once

#include "curv4/connection.hpp"

namespace curv4 {

/// Full curvature data at one chart point, all in orthonormal-frame
/// components.  The operator acts on 2-forms and decomposes as
///
///   [ wplus + s/12      rr       ]
///   [    rr^T       wminus + s/12]
///
/// in the (sigma+, sigma-) block basis; wplus/wminus are trace-free and the
/// off-diagonal block vanishes exactly when the metric is Einstein.
struct PointCurvature {
    OperatorOnForms op;
    Matrix4 ricci = Matrix4::Zero();
    double s = 0.0;
    Matrix3 wplus = Matrix3::Zero();
    Matrix3 wminus = Matrix3::Zero();
    Matrix3 rr = Matrix3::Zero();
    /// ||M - M^T|| of the raw assembly before symmetrization (finite-difference
    /// noise indicator)
    double assembly_asymmetry = 0.0;

    /// Rm(e_i, e_j, e_k, e_l)
    double rm(int i, int j, int k, int l) const;
    /// Rm(X, Y, Z, W) on frame-component vectors
    double rm(const Vec4& x, const Vec4& y, const Vec4& z, const Vec4& w) const {
        return op.pair(wedge(x, y), wedge(z, w));
    }
};

/// Curvature at x: d(omega) by 4th-order central differences (one Richardson
/// step) of the closed-form connection, quadratic term exact; fd_step is the
/// absolute coordinate step.
PointCurvature curvature_at(const CoframeField& cf, const Vec4& x, double fd_step);

/// max(||rr||_F, ||ricci - (s/4) Id||_F)
double einstein_residual(const PointCurvature& pc);

}  // namespace curv4
