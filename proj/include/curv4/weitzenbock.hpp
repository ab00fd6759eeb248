#pragma once

#include "curv4/curvature.hpp"

namespace curv4 {

/// || (d + d*)^2 phi - (nabla*nabla phi - 2 W phi + (s/3) phi) || at x,
/// comparing orthonormal-frame components.  The Hodge side is assembled from
/// the coordinate exterior derivative and the metric Hodge star, the rough
/// Laplacian from the connection; the field must carry analytic first and
/// second partials.
double weitzenbock_residual(const CoframeField& cf, const TwoFormField& field, const Vec4& x,
                            double fd_step = 5e-4);

/// analytic sample fields for the charts that support the residual check:
/// three for "t4", one for "s4"
std::vector<TwoFormField> sample_form_fields(const std::string& metric_base);

}  // namespace curv4
