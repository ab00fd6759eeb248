#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "curv4/chart.hpp"
#include "curv4/forms.hpp"

namespace curv4 {

/// first partials of the coframe matrix: jet[nu](i, mu) = d_nu e^i_mu
using CoframeJet = std::array<Matrix4, 4>;

/// A metric descriptor: coframe coefficient matrix e^i_mu(x) (row i = coframe
/// covector i in the coordinate basis) together with its analytic first
/// partials.  The metric is sum_i e^i (x) e^i.  Descriptors are immutable
/// after construction and safe to share across threads.
struct CoframeField {
    Chart chart;
    std::function<Matrix4(const Vec4&)> coeff;
    std::function<CoframeJet(const Vec4&)> dcoeff;
    std::string name;
    /// constant frame-component complex structure, for metrics whose W+ is
    /// too degenerate for recovery (flat tori) or as a cross-check
    std::optional<Matrix4> canonical_j;

    Matrix4 metric_at(const Vec4& x) const {
        const Matrix4 e = coeff(x);
        return e.transpose() * e;
    }
};

/// Coordinate-explicit 2-form field with analytic first and second partials.
/// Components are taken in the coordinate wedge basis
/// (dx0^dx1, dx0^dx2, dx0^dx3, dx2^dx3, dx3^dx1, dx1^dx2).
struct TwoFormField {
    std::function<Vector6(const Vec4&)> comp;
    /// d1(A, nu) = d_nu comp_A
    std::function<Eigen::Matrix<double, 6, 4>(const Vec4&)> d1;
    /// d2[rho](A, nu) = d_rho d_nu comp_A
    std::function<std::array<Eigen::Matrix<double, 6, 4>, 4>(const Vec4&)> d2;
};

}  // namespace curv4
