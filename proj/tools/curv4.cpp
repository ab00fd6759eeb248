#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>

#include "curv4/catalog.hpp"
#include "curv4/report.hpp"
#include "curv4/submanifold.hpp"
#include "curv4/weitzenbock.hpp"

namespace {

using namespace curv4;

constexpr double kPi = std::numbers::pi;

struct Flags {
    std::string config_path;
    std::optional<std::string> metric;
    std::optional<double> a;
    std::vector<int> grid;
    std::optional<int> sphere_points, refine_iters, loop_steps, threads, consistency_grid;
    std::optional<double> fd_step, margin;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::vector<std::string> formats;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file; flags override file values");
    cmd->add_option("--metric", f.metric,
                    "page | page(a=..) | fubini-study | s4(r) | t4 | s2xs2(r1,r2)");
    cmd->add_option("--a", f.a, "page shape parameter override");
    cmd->add_option("--grid", f.grid, "grid resolution, 1 shared or 4 per-coordinate values")
        ->expected(1, 4);
    cmd->add_option("--sphere-points", f.sphere_points, "ASD sphere sample count");
    cmd->add_option("--refine-iters", f.refine_iters, "refinement iterations");
    cmd->add_option("--fd-step", f.fd_step, "finite-difference step");
    cmd->add_option("--margin", f.margin, "chart margin override (applies to all coordinates)");
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--loop-steps", f.loop_steps, "transport integrator steps per edge");
    cmd->add_option("--threads", f.threads, "worker threads (0 = hardware)");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--format", f.formats, "output formats: json, csv")->expected(1, 2);
}

RunConfig resolve(const Flags& f) {
    RunConfig cfg;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw ConfigError("cannot open config file: " + f.config_path);
        nlohmann::json j;
        try {
            in >> j;
            cfg = RunConfig::from_json(j);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("bad config file: ") + e.what());
        }
    }
    if (f.metric) cfg.metric = *f.metric;
    if (f.a) cfg.a = f.a;
    if (!f.grid.empty()) {
        if (f.grid.size() == 1) cfg.scan.grid.fill(f.grid[0]);
        else if (f.grid.size() == 4)
            for (int mu = 0; mu < 4; ++mu) cfg.scan.grid[mu] = f.grid[mu];
        else
            throw ConfigError("--grid takes 1 or 4 integers");
    }
    if (f.sphere_points) cfg.scan.sphere_points = *f.sphere_points;
    if (f.refine_iters) cfg.scan.refine_iters = *f.refine_iters;
    if (f.fd_step) cfg.scan.fd_step = *f.fd_step;
    if (f.margin) cfg.scan.margin = *f.margin;
    if (f.seed) cfg.scan.seed = *f.seed;
    if (f.threads) cfg.scan.threads = *f.threads;
    if (f.consistency_grid) cfg.scan.consistency_grid = *f.consistency_grid;
    if (f.loop_steps) cfg.loop_steps = *f.loop_steps;
    if (f.out) cfg.out_dir = *f.out;
    if (!f.formats.empty()) cfg.formats = f.formats;
    for (const auto& fmt : cfg.formats)
        if (fmt != "json" && fmt != "csv") throw ConfigError("unknown format: " + fmt);
    return cfg;
}

std::string metric_base(const std::string& selector) {
    const auto open = selector.find('(');
    return open == std::string::npos ? selector : selector.substr(0, open);
}

bool wants(const RunConfig& cfg, const std::string& fmt) {
    return std::find(cfg.formats.begin(), cfg.formats.end(), fmt) != cfg.formats.end();
}

int finish(RunReport& rep, const RunConfig& cfg, double elapsed) {
    rep.config_echo = cfg.to_json();
    rep.timestamp = iso_timestamp();
    rep.wall_seconds = elapsed;
    if (wants(cfg, "json")) {
        const auto path = write_report(rep, cfg);
        std::cout << "wrote " << path.string() << "\n";
    }
    for (const auto& c : rep.checks)
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": measured " << c.measured
                  << " " << c.comparator << " " << c.tolerance << (c.passed ? "" : "  <-- failed")
                  << "\n";
    return rep.all_passed() ? 0 : 1;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void einstein_csv(const RunConfig& cfg, const CoframeField& cf,
                  const EinsteinScanReport& scan) {
    if (!wants(cfg, "csv")) return;
    Chart chart = cf.chart;
    if (cfg.scan.margin >= 0)
        chart.margin = {cfg.scan.margin, cfg.scan.margin, cfg.scan.margin, cfg.scan.margin};
    ScanConfig c = cfg.scan;
    c.margin = -1;
    const auto pts = scan_grid(chart, c);
    std::vector<std::pair<Vec4, double>> rows;
    rows.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) rows.emplace_back(pts[i], scan.residuals[i]);
    write_field_csv("einstein_residual", {chart.names[0], chart.names[1], chart.names[2],
                                          chart.names[3]},
                    rows, cfg);
}

int run_check_einstein(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const CoframeField cf = metric_by_name(cfg.metric_selector());
    const EinsteinScanReport scan = scan_einstein(cf, cfg.scan);
    RunReport rep;
    rep.results["einstein"] = to_json(scan);
    rep.checks.push_back(
        make_check("einstein_max_residual", scan.max_residual, "<", 1e-5, scan.arg_max));
    // scale-flat metrics divide by 1 instead of by s = 0
    const double s_scale = std::max(std::abs(scan.s_mean), 1.0);
    rep.checks.push_back(
        make_check("scalar_curvature_stdev_over_mean", scan.s_stdev / s_scale, "<", 1e-6));
    einstein_csv(cfg, cf, scan);
    return finish(rep, cfg, elapsed_since(t0));
}

void scan_csv(const RunConfig& cfg, const CoframeField& cf, const ScanReport& scan) {
    if (!wants(cfg, "csv")) return;
    Chart chart = cf.chart;
    if (cfg.scan.margin >= 0)
        chart.margin = {cfg.scan.margin, cfg.scan.margin, cfg.scan.margin, cfg.scan.margin};
    ScanConfig c = cfg.scan;
    c.margin = -1;
    const auto pts = scan_grid(chart, c);
    std::vector<std::pair<Vec4, double>> rows;
    rows.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) rows.emplace_back(pts[i], scan.cell_values[i]);
    write_field_csv(scan.functional, {chart.names[0], chart.names[1], chart.names[2],
                                      chart.names[3]},
                    rows, cfg);
}

void add_scan_checks(RunReport& rep, const std::string& base, const ScanReport& scan,
                     bool orthogonal) {
    if (base == "page") {
        // negativity is the finding; it must clear the numerical noise floor
        rep.checks.push_back(make_check("negativity_detected", scan.min_value, "<",
                                        -100.0 * scan.est_error, scan.argmin.x));
    } else if (base == "fubini-study") {
        rep.checks.push_back(make_check("min_positive", scan.min_value, ">", 0.0, scan.argmin.x));
        if (orthogonal)
            rep.checks.push_back(make_check("orthogonal_value_constant",
                                            scan.max_value - scan.min_value, "<", 1e-6));
    } else if (base == "s2xs2") {
        rep.checks.push_back(
            make_check("min_abs_small", std::abs(scan.min_value), "<", 1e-6, scan.argmin.x));
    } else if (base == "t4") {
        rep.checks.push_back(
            make_check("identically_zero", std::abs(scan.min_value), "<", 1e-12));
    }
}

int run_scan_bisec(const RunConfig& cfg, bool orthogonal) {
    const auto t0 = std::chrono::steady_clock::now();
    const CoframeField cf = metric_by_name(cfg.metric_selector());
    const ScanReport scan = orthogonal ? scan_orthogonal_bisectional(cf, cfg.scan)
                                       : scan_bisectional(cf, cfg.scan);
    std::cout << scan.functional << " on " << cf.name << ": min " << scan.min_value << " at ("
              << scan.argmin.x(0) << ", " << scan.argmin.x(1) << ", " << scan.argmin.x(2)
              << ", " << scan.argmin.x(3) << "), max " << scan.max_value << ", est. error "
              << scan.est_error << "\n";
    RunReport rep;
    rep.results[scan.functional] = to_json(scan);
    add_scan_checks(rep, metric_base(cfg.metric), scan, orthogonal);
    scan_csv(cfg, cf, scan);
    return finish(rep, cfg, elapsed_since(t0));
}

int run_weyl_spectrum(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const CoframeField cf = metric_by_name(cfg.metric_selector());
    Chart chart = cf.chart;
    if (cfg.scan.margin >= 0)
        chart.margin = {cfg.scan.margin, cfg.scan.margin, cfg.scan.margin, cfg.scan.margin};
    ScanConfig c = cfg.scan;
    c.margin = -1;
    const auto pts = scan_grid(chart, c);

    double pattern_max = 0, jsq_max = 0, jmet_max = 0;
    double top_min = std::numeric_limits<double>::infinity();
    Vec4 pattern_arg = pts.front();
    std::vector<std::pair<Vec4, double>> rows;
    for (const Vec4& x : pts) {
        const PointCurvature pc = curvature_at(cf, x, cfg.scan.fd_step);
        Eigen::SelfAdjointEigenSolver<Matrix3> es(pc.wplus);
        const Vector3 ev = es.eigenvalues();  // ascending
        const double top = ev(2);
        top_min = std::min(top_min, top);
        const double rel =
            std::max(std::abs(ev(0) + top / 2), std::abs(ev(1) + top / 2)) / std::abs(top);
        if (rel > pattern_max) {
            pattern_max = rel;
            pattern_arg = x;
        }
        const ComplexStructureData cs = recover_j(pc);
        jsq_max = std::max(jsq_max, (cs.j * cs.j + Matrix4::Identity()).norm());
        jmet_max =
            std::max(jmet_max, (cs.j.transpose() * cs.j - Matrix4::Identity()).norm());
        rows.emplace_back(x, top);
    }

    RunReport rep;
    rep.results["weyl"] = {{"pattern_rel_max", pattern_max},
                           {"pattern_arg", {pattern_arg(0), pattern_arg(1), pattern_arg(2),
                                            pattern_arg(3)}},
                           {"top_eigenvalue_min", top_min},
                           {"j_square_max", jsq_max},
                           {"j_metric_max", jmet_max}};
    rep.checks.push_back(
        make_check("wplus_pattern_relative", pattern_max, "<", 1e-6, pattern_arg));
    rep.checks.push_back(make_check("wplus_top_positive", top_min, ">", 0.0));
    rep.checks.push_back(make_check("j_square_plus_identity", jsq_max, "<", 1e-8));
    rep.checks.push_back(make_check("j_metric_compatibility", jmet_max, "<", 1e-8));
    if (wants(cfg, "csv"))
        write_field_csv("wplus_top", {chart.names[0], chart.names[1], chart.names[2],
                                      chart.names[3]},
                        rows, cfg);
    return finish(rep, cfg, elapsed_since(t0));
}

int run_check_estimates(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const CoframeField cf = metric_by_name(cfg.metric_selector());
    const EstimatesReport est = check_estimates(cf, cfg.scan);
    RunReport rep;
    rep.results["estimates"] = to_json(est);
    const std::string base = metric_base(cfg.metric);
    if (base == "fubini-study") {
        rep.checks.push_back(
            make_check("first_estimate_strictly_negative", est.first_estimate_max, "<", 0.0));
        rep.checks.push_back(
            make_check("second_estimate_strictly_negative", est.second_estimate_max, "<", 0.0));
    } else if (base == "page") {
        rep.checks.push_back(make_check("second_estimate_violation_detected", est.second_estimate_max,
                                        ">=", 0.0, est.second_estimate_arg));
    }
    rep.checks.push_back(
        make_check("conformal_consistency_relative", est.consistency_max, "<", 1e-4));
    rep.checks.push_back(make_check("stilde_positive", est.stilde_min, ">", 0.0));
    return finish(rep, cfg, elapsed_since(t0));
}

int run_normal_bundle(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string base = metric_base(cfg.metric);
    RunReport rep;

    if (base == "t4") {
        const CoframeField cf = metric_by_name(cfg.metric_selector());
        const FiberSurface s = t4_surface(cf);
        std::mt19937_64 rng(cfg.scan.seed);
        double fmax = 0;
        std::uniform_real_distribution<double> du(s.u_range().lo + 0.1, s.u_range().hi - 0.1);
        std::uniform_real_distribution<double> dv(s.v_range().lo + 0.1, s.v_range().hi - 0.1);
        for (int k = 0; k < 100; ++k)
            fmax = std::max(fmax, std::abs(normal_curvature(s, du(rng), dv(rng), 1e-3)));
        rep.checks.push_back(make_check("flat_chart_normal_curvature", fmax, "<", 1e-12));
        return finish(rep, cfg, elapsed_since(t0));
    }
    if (base != "page") throw ConfigError("normal-bundle requires the page or t4 metric");

    const CoframeField page = metric_by_name(cfg.metric_selector());
    const std::array<std::pair<double, double>, 5> surfaces = {
        {{kPi / 2, 0.0}, {0.3, 1.0}, {2.0, 4.0}, {0.1, 2.5}, {3.0, 5.5}}};
    std::mt19937_64 rng(cfg.scan.seed);
    double flat_max = 0;
    Vec4 flat_arg = Vec4::Zero();
    nlohmann::json per_surface = nlohmann::json::array();
    const double fd = 1e-3;
    for (const auto& [th0, ph0] : surfaces) {
        const FiberSurface s = page_fiber_surface(page, th0, ph0);
        const Interval ur = s.u_range(), vr = s.v_range();
        std::uniform_real_distribution<double> du(ur.lo + 2 * fd, ur.hi - 2 * fd);
        std::uniform_real_distribution<double> dv(vr.lo + 2 * fd, vr.hi - 2 * fd);
        double fmax = 0, arg_u = 0, arg_v = 0;
        for (int k = 0; k < 100; ++k) {
            const double u = du(rng), v = dv(rng);
            const double f = std::abs(normal_curvature(s, u, v, fd));
            if (f > fmax) {
                fmax = f;
                arg_u = u;
                arg_v = v;
            }
        }
        per_surface.push_back({{"theta0", th0},
                               {"phi0", ph0},
                               {"max_abs_curvature", fmax},
                               {"arg", {arg_u, arg_v}}});
        if (fmax > flat_max) {
            flat_max = fmax;
            flat_arg = s.point(arg_u, arg_v);
        }
        if (wants(cfg, "csv")) {
            std::vector<std::pair<Vec4, double>> rows;
            for (int i = 0; i < 16; ++i)
                for (int j = 0; j < 16; ++j) {
                    const double u = ur.lo + 2 * fd + (ur.length() - 4 * fd) * i / 15.0;
                    const double v = vr.lo + 2 * fd + (vr.length() - 4 * fd) * j / 15.0;
                    rows.emplace_back(Vec4(u, v, th0, ph0), normal_curvature(s, u, v, fd));
                }
            std::ostringstream nm;
            nm << "normal_curvature_theta" << th0 << "_phi" << ph0;
            write_field_csv(nm.str(), {"r", "psi", "theta0", "phi0"}, rows, cfg);
        }
    }

    const FiberSurface s0 = page_fiber_surface(page, kPi / 2, 0.0);
    double hol_max = 0;
    nlohmann::json loops = nlohmann::json::array();
    for (const double d : {kPi / 4, kPi / 3, 3 * kPi / 8}) {
        const HolonomyResult h =
            holonomy_loop(s0, rectangle_loop(d, kPi - d, 0.0, 2 * kPi), cfg.loop_steps);
        hol_max = std::max(hol_max, std::abs(h.angle));
        loops.push_back({{"r0", d}, {"r1", kPi - d}, {"angle", h.angle},
                         {"est_error", h.est_error}});
    }

    const double defect = parallel_section_defect(s0, 32, 32, std::max(16, cfg.loop_steps / 16));
    const FiberSurface contrast =
        s4_contrast_surface(metric_by_name("s4(1)"), kPi / 2, kPi / 2);
    const double contrast_defect =
        parallel_section_defect(contrast, 32, 32, std::max(16, cfg.loop_steps / 16));

    rep.results["normal_bundle"] = {{"surfaces", per_surface},
                                    {"loops", loops},
                                    {"transport_defect", defect},
                                    {"contrast_defect", contrast_defect}};
    rep.checks.push_back(
        make_check("fiber_normal_curvature_max", flat_max, "<", 1e-8, flat_arg,
                   "restriction of omega_23 to the fiber sphere, d of it in (r,psi)"));
    rep.checks.push_back(make_check("nested_loop_holonomy_max", hol_max, "<", 1e-6,
                                    s0.point(kPi / 4, 0.0), "loops symmetric about r = pi/2"));
    rep.checks.push_back(make_check("transport_path_independence_defect", defect, "<", 1e-5,
                                    s0.point(kPi / 2, 0.0),
                                    "32x32 spanning-tree transport on the theta0 = pi/2 fiber"));
    rep.checks.push_back(make_check("s4_contrast_defect", contrast_defect, ">", 1e-2,
                                    contrast.point(kPi / 2, kPi / 2),
                                    "tangent transport on a geodesic 2-sphere"));
    return finish(rep, cfg, elapsed_since(t0));
}

int run_weitzenbock(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string base = metric_base(cfg.metric);
    if (base != "t4" && base != "s4")
        throw ConfigError("weitzenbock supports the t4 and s4 metrics");
    const CoframeField cf = metric_by_name(cfg.metric_selector());
    const auto fields = sample_form_fields(base);
    const double tol = base == "t4" ? 1e-6 : 1e-5;

    std::mt19937_64 rng(cfg.scan.seed);
    RunReport rep;
    Chart chart = cf.chart;
    for (int mu = 0; mu < 4; ++mu) chart.margin[mu] = std::max(chart.margin[mu], 0.1);
    for (size_t k = 0; k < fields.size(); ++k) {
        double worst = 0;
        Vec4 arg = Vec4::Zero();
        for (int trial = 0; trial < 10; ++trial) {
            const Vec4 x = chart.random_interior(rng);
            const double r = weitzenbock_residual(cf, fields[k], x, 5e-4);
            if (r > worst) {
                worst = r;
                arg = x;
            }
        }
        rep.checks.push_back(make_check("weitzenbock_residual_field" + std::to_string(k + 1),
                                        worst, "<", tol, arg));
    }
    return finish(rep, cfg, elapsed_since(t0));
}

int run_report_all(const RunConfig& cfg) {
    const std::string base = metric_base(cfg.metric);
    int rc = 0;
    auto merge = [&rc](int code) { rc = std::max(rc, code); };
    merge(run_check_einstein(cfg));
    if (base == "page" || base == "fubini-study" || base == "t4" || base == "s2xs2") {
        merge(run_scan_bisec(cfg, false));
        merge(run_scan_bisec(cfg, true));
    }
    if (base == "page" || base == "fubini-study" || base == "s2xs2") merge(run_weyl_spectrum(cfg));
    if (base == "page" || base == "fubini-study") merge(run_check_estimates(cfg));
    if (base == "page" || base == "t4") merge(run_normal_bundle(cfg));
    if (base == "t4" || base == "s4") merge(run_weitzenbock(cfg));
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical curvature engine for oriented Riemannian 4-manifolds"};
    app.require_subcommand(1);

    Flags f;
    std::string chosen;
    for (const char* name : {"check-einstein", "scan-bisec", "scan-ortho-bisec", "weyl-spectrum",
                             "check-estimates", "normal-bundle", "weitzenbock", "report-all"}) {
        CLI::App* cmd = app.add_subcommand(name);
        add_common(cmd, f);
        cmd->callback([&chosen, name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const RunConfig cfg = resolve(f);
        if (chosen == "check-einstein") return run_check_einstein(cfg);
        if (chosen == "scan-bisec") return run_scan_bisec(cfg, false);
        if (chosen == "scan-ortho-bisec") return run_scan_bisec(cfg, true);
        if (chosen == "weyl-spectrum") return run_weyl_spectrum(cfg);
        if (chosen == "check-estimates") return run_check_estimates(cfg);
        if (chosen == "normal-bundle") return run_normal_bundle(cfg);
        if (chosen == "weitzenbock") return run_weitzenbock(cfg);
        if (chosen == "report-all") return run_report_all(cfg);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        // bad numeric configuration (grid, sphere counts, steps, ...)
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
