#pragma once

#include <string>

#include "curv4/coframe.hpp"

namespace curv4 {

struct PageParams {
    double a;  // shape parameter, 0 < a < 1
};

double page_quartic(double a);
/// unique root of a^4 + 4a^3 - 6a^2 + 12a - 3 in (0,1), |quartic| < 1e-14
double page_root();

double page_V(double a, double r);
double page_f(double a, double r);
double page_C(double a);

/// Page family on the (r, theta, phi, psi) chart, r in [0,pi], theta in
/// [0,pi], phi in [0,2pi], psi in [0,4pi]; Einstein exactly at a = page_root()
CoframeField page_metric(const PageParams& p);

/// Fubini-Study on the cohomogeneity-one chart over S^3, normalized so the
/// holomorphic sectional curvature is identically 4
CoframeField fubini_study();

CoframeField round_s4(double radius);
CoframeField flat_t4();
CoframeField round_s2xs2(double r1, double r2);

/// The three Euler-angle 1-forms on (theta, phi, psi), as covectors in the
/// (dtheta, dphi, dpsi) basis with analytic partials d1[i](a, b) = d_a sigma_i_b.
struct SigmaForms {
    std::array<std::function<Vector3(const Vector3&)>, 3> comp;
    std::array<std::function<Matrix3(const Vector3&)>, 3> d1;
};
SigmaForms sigma_forms();

/// Hopf projection in Euler angles: (theta, psi, phi) -> (-phi, theta)
Eigen::Vector2d hopf_project(double theta, double psi, double phi);

/// Euler-angle point of the unit S^3 in R^4, ordered (x1, x2, x3, x0)
Vec4 euler_embedding(double theta, double psi, double phi);

/// Catalog lookup by selector string: "page", "page(a=0.5)", "fubini-study",
/// "s4(r)", "t4", "s2xs2(r1,r2)".  Throws ConfigError on unknown names or
/// malformed arguments.
CoframeField metric_by_name(const std::string& selector);

}  // namespace curv4
