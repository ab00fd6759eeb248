#pragma once

#include <cstdint>
#include <vector>

#include "curv4/hermitian.hpp"

namespace curv4 {

struct ScanConfig {
    std::array<int, 4> grid{8, 8, 8, 8};
    int sphere_points = 100;
    int refine_iters = 20;
    double fd_step = 3e-4;
    /// < 0: keep the chart's own margins; >= 0: override every coordinate
    double margin = -1.0;
    std::uint64_t seed = 20240101;
    int threads = 0;  // 0 = hardware concurrency
    /// per-axis subsample used for the conformal self-consistency check
    int consistency_grid = 2;

    void validate() const;
};

struct ArgPoint {
    Vec4 x = Vec4::Zero();
    Vector3 phi = Vector3::Zero();  // sigma- coordinates, |phi| = 1/sqrt(2)
    Vector3 psi = Vector3::Zero();
};

struct ScanReport {
    std::string functional;
    std::string metric;
    double min_value = 0.0;
    double max_value = 0.0;
    ArgPoint argmin;
    /// finite-difference error at the argmin plus the last refinement gap
    double est_error = 0.0;
    double fd_error = 0.0;
    double refine_delta = 0.0;
    std::vector<double> refine_trace;
    double recheck_value = 0.0;
    double cell_mean = 0.0;
    double cell_stdev = 0.0;
    long long cells = 0;
    double wall_seconds = 0.0;
    ScanConfig config;
    /// per-grid-point minimum over directions, in scan_grid order
    std::vector<double> cell_values;
};

struct EinsteinScanReport {
    std::string metric;
    double max_residual = 0.0;
    Vec4 arg_max = Vec4::Zero();
    double s_mean = 0.0;
    double s_stdev = 0.0;
    long long cells = 0;
    double wall_seconds = 0.0;
    ScanConfig config;
    /// per-grid-point residuals, in scan_grid order
    std::vector<double> residuals;
};

/// n deterministic spherical-Fibonacci directions of the given radius
std::vector<Vector3> fibonacci_sphere(int n, double radius);

/// Minimum of the bisectional pairing over chart x ASD-sphere^2; for a fixed
/// (point, phi) the minimizing psi is linear-over-sphere and solved in closed
/// form, so the search runs over (point, phi) with coordinate-descent
/// refinement.
ScanReport scan_bisectional(const CoframeField& cf, const ScanConfig& cfg);

/// Same scan restricted to psi = -phi (orthogonal complex lines)
ScanReport scan_orthogonal_bisectional(const CoframeField& cf, const ScanConfig& cfg);

ScanReport scan_holomorphic_sectional(const CoframeField& cf, const ScanConfig& cfg);

EinsteinScanReport scan_einstein(const CoframeField& cf, const ScanConfig& cfg);

/// The conformally related descriptor g~ = stilde^2 g with
/// stilde = (6 lambda_+(W+))^{1/3}; partials of the conformal factor are taken
/// by 4th-order central differences with step grad_step.
struct ConformalKahler {
    CoframeField gtilde;
    std::function<double(const Vec4&)> stilde;
    std::function<Matrix3(const Vec4&)> wminus_tilde;
    double fd_step = 3e-4;
    double grad_step = 2e-2;
};
ConformalKahler conformal_kahler(const CoframeField& cf, double fd_step = 3e-4,
                                 double grad_step = 2e-2);

struct EstimatesReport {
    std::string metric;
    /// max over the grid of  lambda_max(W~-) - stilde/6
    double first_estimate_max = 0.0;
    Vec4 first_estimate_arg = Vec4::Zero();
    /// max over the grid of  max_phi <W~- phi, phi> - stilde/12  (= half the above)
    double second_estimate_max = 0.0;
    Vec4 second_estimate_arg = Vec4::Zero();
    double stilde_min = 0.0;
    double stilde_max = 0.0;
    /// max relative mismatch between the scalar curvature of g~ and
    /// (6 lambda_+)^{1/3} over the consistency subgrid
    double consistency_max = 0.0;
    long long cells = 0;
    double wall_seconds = 0.0;
    ScanConfig config;
};
EstimatesReport check_estimates(const CoframeField& cf, const ScanConfig& cfg);

/// grid of scan points implied by a config (margins applied, endpoints included)
std::vector<Vec4> scan_grid(const Chart& chart, const ScanConfig& cfg);

}  // namespace curv4
