// Acceptance suite: one checkable criterion per function, each printing a
// single PASS/FAIL line with the measured values it is judged on.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "curv4/catalog.hpp"
#include "curv4/report.hpp"
#include "curv4/submanifold.hpp"
#include "curv4/weitzenbock.hpp"

using namespace curv4;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFd = 3e-4;

struct Clause {
    std::string text;
    bool ok;
};

struct Criterion {
    int id;
    std::string title;
    std::vector<Clause> clauses;

    bool ok() const {
        for (const auto& c : clauses)
            if (!c.ok) return false;
        return true;
    }
};

double now() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Vec4 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Vec4 v;
    do {
        v = Vec4(n(rng), n(rng), n(rng), n(rng));
    } while (v.norm() < 1e-3);
    return v / v.norm();
}

// ---- criterion 1: page is Einstein at the quartic root --------------------

Criterion criterion1() {
    Criterion c{1, "page metric is Einstein at a = page_root()", {}};
    const double t0 = now();
    ScanConfig cfg;
    cfg.grid = {12, 12, 12, 12};
    cfg.fd_step = kFd;
    const EinsteinScanReport rep = scan_einstein(page_metric({page_root()}), cfg);
    const double wall = now() - t0;
    const double sratio = rep.s_stdev / std::abs(rep.s_mean);
    c.clauses.push_back({fmt("max Einstein residual %.3e < 1e-5 over 12^4 grid",
                             rep.max_residual),
                         rep.max_residual < 1e-5});
    c.clauses.push_back({fmt("scalar curvature stdev/mean %.3e < 1e-6 (s = %.6f)", sratio,
                             rep.s_mean),
                         sratio < 1e-6});
    c.clauses.push_back({fmt("runtime %.1f s < 120 s", wall), wall < 120.0});
    return c;
}

// ---- criterion 2: off-root detection ---------------------------------------

Criterion criterion2() {
    Criterion c{2, "off-root parameter a = 0.5 breaks the Einstein condition", {}};
    ScanConfig cfg;
    cfg.grid = {8, 8, 4, 4};
    cfg.fd_step = kFd;
    const EinsteinScanReport rep = scan_einstein(page_metric({0.5}), cfg);
    c.clauses.push_back(
        {fmt("max Einstein residual %.3e > 1e-2", rep.max_residual), rep.max_residual > 1e-2});
    return c;
}

// ---- criterion 3: fubini-study constants ------------------------------------

Criterion criterion3() {
    Criterion c{3, "fubini-study: H = 4, sectional range [1,4], maximizers are complex lines",
                {}};
    const CoframeField fs = fubini_study();
    Chart box = fs.chart;
    box.margin = {0.1, 0.1, 0.0, 0.0};
    std::mt19937_64 rng(301);

    double h_dev = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec4 x = box.random_interior(rng);
        const PointCurvature pc = curvature_at(fs, x, kFd);
        const ComplexStructureData cs = recover_j(pc);
        const Vec4 u = random_unit(rng);
        h_dev = std::max(h_dev, std::abs(bisectional_direct(pc, cs, u, u) - 4.0));
    }
    c.clauses.push_back({fmt("|H(U) - 4| max %.3e < 1e-6 over 1000 random lines", h_dev),
                         h_dev < 1e-6});

    double kmin = 1e300, kmax = -1e300, max_form_dev = 0;
    bool maximality = true;
    int near_max = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec4 x = box.random_interior(rng);
        const PointCurvature pc = curvature_at(fs, x, kFd);
        const ComplexStructureData cs = recover_j(pc);
        Vec4 u = random_unit(rng);
        Vec4 v;
        if (trial % 4 == 0) {
            v = cs.j * u;  // constructed maximizer
        } else {
            v = random_unit(rng);
            if (wedge(u, v).norm() < 1e-2) continue;
        }
        const double k = sectional(pc, u, v);
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
        if (k > 4.0 - 1e-6) {
            ++near_max;
            const auto [alpha, beta] = plane_to_forms(u, v);
            const double dev = std::min((alpha - 0.5 * cs.omega).norm(),
                                        (alpha + 0.5 * cs.omega).norm());
            max_form_dev = std::max(max_form_dev, dev);
            if (dev > 1e-5) maximality = false;
        }
    }
    c.clauses.push_back({fmt("sectional range [%.8f, %.8f] within [1-1e-6, 4+1e-6]", kmin, kmax),
                         kmin > 1.0 - 1e-6 && kmax < 4.0 + 1e-6});
    c.clauses.push_back(
        {fmt("%d near-maximal planes all carry alpha = omega/2 (worst dev %.2e < 1e-5)",
             near_max, max_form_dev),
         maximality && near_max > 0});
    return c;
}

// ---- criterion 4: page bisectional minimum is negative ---------------------

Criterion criterion4() {
    Criterion c{4, "page holomorphic bisectional curvature attains negative values", {}};
    const double t0 = now();
    const CoframeField page = page_metric({page_root()});
    ScanConfig cfg;
    cfg.grid = {14, 10, 8, 8};
    cfg.sphere_points = 100;
    cfg.refine_iters = 24;
    cfg.fd_step = kFd;
    const ScanReport rep = scan_bisectional(page, cfg);

    ScanConfig dbl = cfg;
    for (int mu = 0; mu < 4; ++mu) dbl.grid[mu] *= 2;
    const ScanReport rep2 = scan_bisectional(page, dbl);
    const double wall = now() - t0;
    const double change = std::abs(rep2.min_value - rep.min_value) / std::abs(rep.min_value);

    c.clauses.push_back({fmt("min %.6f < 0 at (r,th,phi,psi) = (%.3f, %.3f, %.3f, %.3f)",
                             rep.min_value, rep.argmin.x(0), rep.argmin.x(1), rep.argmin.x(2),
                             rep.argmin.x(3)),
                         rep.min_value < 0});
    c.clauses.push_back({fmt("|min| = %.4f > 100 x est. error %.2e", std::abs(rep.min_value),
                             rep.est_error),
                         std::abs(rep.min_value) > 100 * rep.est_error});
    c.clauses.push_back({fmt("doubling the grid moves the min by %.2f%% < 10%%", 100 * change),
                         change < 0.10});
    c.clauses.push_back({fmt("runtime %.1f s < 600 s", wall), wall < 600.0});
    return c;
}

// ---- criterion 5: normal-bundle flatness ------------------------------------

Criterion criterion5() {
    Criterion c{5, "fiber-sphere normal bundle flatness battery", {}};
    const CoframeField page = page_metric({page_root()});
    std::mt19937_64 rng(501);
    const double fd = 1e-3;

    const std::array<std::pair<double, double>, 5> surfaces = {
        {{kPi / 2, 0.0}, {0.3, 1.0}, {2.0, 4.0}, {0.1, 2.5}, {3.0, 5.5}}};
    double fmax = 0;
    for (const auto& [th0, ph0] : surfaces) {
        const FiberSurface s = page_fiber_surface(page, th0, ph0);
        std::uniform_real_distribution<double> du(s.u_range().lo + 2 * fd,
                                                  s.u_range().hi - 2 * fd);
        std::uniform_real_distribution<double> dv(s.v_range().lo, s.v_range().hi);
        for (int k = 0; k < 100; ++k)
            fmax = std::max(fmax, std::abs(normal_curvature(s, du(rng), dv(rng), fd)));
    }
    c.clauses.push_back(
        {fmt("max |normal curvature| %.3e < 1e-8 on 5 fiber spheres x 100 points", fmax),
         fmax < 1e-8});

    const FiberSurface s0 = page_fiber_surface(page, kPi / 2, 0.0);
    double hol = 0;
    for (const double d : {kPi / 4, kPi / 3, 3 * kPi / 8}) {
        const HolonomyResult h = holonomy_loop(s0, rectangle_loop(d, kPi - d, 0.0, 2 * kPi),
                                                2048);
        hol = std::max(hol, std::abs(h.angle));
    }
    c.clauses.push_back({fmt("max |holonomy| of 3 nested loops %.3e < 1e-6", hol), hol < 1e-6});

    const double defect = parallel_section_defect(s0, 32, 32, 128);
    c.clauses.push_back({fmt("32x32 transport path-independence defect %.3e < 1e-5", defect),
                         defect < 1e-5});

    const FiberSurface contrast = s4_contrast_surface(round_s4(1.0), kPi / 2, kPi / 2);
    const double cdef = parallel_section_defect(contrast, 32, 32, 128);
    c.clauses.push_back({fmt("S4 contrast defect %.3e > 1e-2", cdef), cdef > 1e-2});
    return c;
}

// ---- criterion 6: eigenstructure of W+ --------------------------------------

Criterion criterion6() {
    Criterion c{6, "page W+ spectrum is (l, -l/2, -l/2) with l > 0; recovered J is a complex "
                   "structure",
                {}};
    const CoframeField page = page_metric({page_root()});
    ScanConfig cfg;
    cfg.grid = {8, 8, 4, 4};
    const auto pts = scan_grid(page.chart, cfg);
    double pattern = 0, jsq = 0, jmet = 0, top_min = 1e300;
    for (const Vec4& x : pts) {
        const PointCurvature pc = curvature_at(page, x, kFd);
        Eigen::SelfAdjointEigenSolver<Matrix3> es(pc.wplus);
        const Vector3 ev = es.eigenvalues();
        top_min = std::min(top_min, ev(2));
        pattern = std::max(pattern, std::max(std::abs(ev(0) + ev(2) / 2),
                                             std::abs(ev(1) + ev(2) / 2)) /
                                        std::abs(ev(2)));
        const ComplexStructureData cs = recover_j(pc);
        jsq = std::max(jsq, (cs.j * cs.j + Matrix4::Identity()).norm());
        jmet = std::max(jmet, (cs.j.transpose() * cs.j - Matrix4::Identity()).norm());
    }
    c.clauses.push_back({fmt("relative pattern deviation %.3e < 1e-6 over %zu points", pattern,
                             pts.size()),
                         pattern < 1e-6});
    c.clauses.push_back({fmt("top eigenvalue min %.6f > 0", top_min), top_min > 0});
    c.clauses.push_back({fmt("||J^2 + Id|| max %.3e < 1e-8", jsq), jsq < 1e-8});
    c.clauses.push_back({fmt("||J^T J - Id|| max %.3e < 1e-8", jmet), jmet < 1e-8});
    return c;
}

// ---- criterion 7: Kaehler identity discrimination ---------------------------

Criterion criterion7() {
    Criterion c{7, "bisectional splitting identity holds on fubini-study, fails on page", {}};
    std::mt19937_64 rng(701);
    const CoframeField fs = fubini_study();
    Chart box = fs.chart;
    box.margin = {0.1, 0.1, 0.0, 0.0};
    double fs_worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec4 x = box.random_interior(rng);
        const PointCurvature pc = curvature_at(fs, x, kFd);
        const ComplexStructureData cs = recover_j(pc);
        const Vec4 u = random_unit(rng);
        const Vec4 v = random_unit(rng);
        if (wedge(u, v).norm() < 1e-2 || wedge(u, (cs.j * v).eval()).norm() < 1e-2) continue;
        fs_worst = std::max(fs_worst, kahler_bisec_identity_residual(pc, cs, u, v));
    }
    c.clauses.push_back({fmt("fubini-study residual max %.3e < 1e-6 over 1000 pairs", fs_worst),
                         fs_worst < 1e-6});

    const CoframeField page = page_metric({page_root()});
    double pg_worst = 0;
    Vec4 arg = Vec4::Zero();
    for (int trial = 0; trial < 400; ++trial) {
        const Vec4 x = page.chart.random_interior(rng);
        const PointCurvature pc = curvature_at(page, x, kFd);
        const ComplexStructureData cs = recover_j(pc);
        const Vec4 u = random_unit(rng);
        const Vec4 v = random_unit(rng);
        if (wedge(u, v).norm() < 1e-2 || wedge(u, (cs.j * v).eval()).norm() < 1e-2) continue;
        const double res = kahler_bisec_identity_residual(pc, cs, u, v);
        if (res > pg_worst) {
            pg_worst = res;
            arg = x;
        }
    }
    c.clauses.push_back(
        {fmt("page residual %.4f > 1e-3 at (%.3f, %.3f, %.3f, %.3f)", pg_worst, arg(0), arg(1),
             arg(2), arg(3)),
         pg_worst > 1e-3});
    return c;
}

// ---- criterion 8: the two estimates -----------------------------------------

Criterion criterion8() {
    Criterion c{8, "estimate quantities: strictly negative on fubini-study, violated on page",
                {}};
    ScanConfig cfg;
    cfg.grid = {10, 8, 2, 2};
    cfg.consistency_grid = 2;

    const EstimatesReport fs = check_estimates(fubini_study(), cfg);
    c.clauses.push_back({fmt("fubini-study: lambda_max(W~-) - s~/6 = %.6f < 0 and half of it "
                             "%.6f < 0",
                             fs.first_estimate_max, fs.second_estimate_max),
                         fs.first_estimate_max < 0 && fs.second_estimate_max < 0});
    c.clauses.push_back({fmt("fubini-study conformal consistency %.2e < 1e-4",
                             fs.consistency_max),
                         fs.consistency_max < 1e-4});

    const EstimatesReport pg = check_estimates(page_metric({page_root()}), cfg);
    c.clauses.push_back(
        {fmt("page: <W~- phi, phi> - s~/12 attains %.6f >= 0 at r = %.3f", pg.second_estimate_max,
             pg.second_estimate_arg(0)),
         pg.second_estimate_max >= 0});
    c.clauses.push_back({fmt("page conformal consistency %.2e < 1e-4", pg.consistency_max),
                         pg.consistency_max < 1e-4});
    return c;
}

// ---- criterion 9: Weitzenboeck residuals ------------------------------------

Criterion criterion9() {
    Criterion c{9, "Weitzenboeck residuals on flat and round reference spaces", {}};
    std::mt19937_64 rng(901);

    const CoframeField t4 = flat_t4();
    double t4_worst = 0;
    for (const TwoFormField& f : sample_form_fields("t4"))
        for (int trial = 0; trial < 10; ++trial)
            t4_worst = std::max(
                t4_worst, weitzenbock_residual(t4, f, t4.chart.random_interior(rng), 5e-4));
    c.clauses.push_back({fmt("flat torus: max residual %.3e < 1e-6 over 3 fields", t4_worst),
                         t4_worst < 1e-6});

    const CoframeField s4 = round_s4(1.0);
    Chart box = s4.chart;
    for (int mu = 0; mu < 4; ++mu) box.margin[mu] = std::max(box.margin[mu], 0.15);
    double s4_worst = 0;
    for (int trial = 0; trial < 10; ++trial)
        s4_worst = std::max(s4_worst, weitzenbock_residual(s4, sample_form_fields("s4")[0],
                                                           box.random_interior(rng), 5e-4));
    c.clauses.push_back({fmt("round S4: max residual %.3e < 1e-5", s4_worst), s4_worst < 1e-5});
    return c;
}

// ---- criterion 10: structural identities and determinism --------------------

Criterion criterion10() {
    Criterion c{10, "sigma-form identities, structure equations, report determinism", {}};
    std::mt19937_64 rng(1001);

    const SigmaForms s = sigma_forms();
    double sigma_worst = 0;
    std::uniform_real_distribution<double> ang(0.1, kPi - 0.1);
    std::uniform_real_distribution<double> full(0.0, 2 * kPi);
    for (int trial = 0; trial < 300; ++trial) {
        const Vector3 x(ang(rng), full(rng), 2 * full(rng));
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            const Matrix3 d = s.d1[i](x);
            const Matrix3 lhs = d - d.transpose();
            const Vector3 sj = s.comp[j](x), sk = s.comp[k](x);
            Matrix3 rhs;
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q) rhs(p, q) = 2 * (sj(p) * sk(q) - sj(q) * sk(p));
            sigma_worst = std::max(sigma_worst, (lhs - rhs).norm());
        }
        const Vector3 s1 = s.comp[0](x), s2 = s.comp[1](x);
        Matrix3 quad = s1 * s1.transpose() + s2 * s2.transpose();
        quad(0, 0) -= 0.25;
        quad(1, 1) -= std::sin(x(0)) * std::sin(x(0)) / 4;
        sigma_worst = std::max(sigma_worst, quad.norm());
    }
    c.clauses.push_back({fmt("sigma-form identities hold to %.3e < 1e-12", sigma_worst),
                         sigma_worst < 1e-12});

    double structure_worst = 0;
    for (const CoframeField& cf : {page_metric({page_root()}), fubini_study(), round_s4(1.0),
                                   flat_t4(), round_s2xs2(1.0, 1.0)}) {
        for (int trial = 0; trial < 1000; ++trial)
            structure_worst =
                std::max(structure_worst, structure_residual(cf, cf.chart.random_interior(rng)));
    }
    c.clauses.push_back(
        {fmt("structure-equation residual %.3e < 1e-9 on all catalog metrics (1000 pts each)",
             structure_worst),
         structure_worst < 1e-9});

    ScanConfig cfg;
    cfg.grid = {4, 4, 2, 2};
    cfg.sphere_points = 24;
    cfg.refine_iters = 6;
    const CoframeField page = page_metric({page_root()});
    const std::string a = to_json(scan_bisectional(page, cfg)).dump();
    const std::string b = to_json(scan_bisectional(page, cfg)).dump();
    c.clauses.push_back({"repeated scans serialize identically (excluding wall clock)", a == b});
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);

    using Fn = Criterion (*)();
    const Fn criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                           criterion6, criterion7, criterion8, criterion9, criterion10};

    int failures = 0;
    for (int i = 0; i < 10; ++i) {
        if (only != 0 && i + 1 != only) continue;
        const Criterion c = criteria[i]();
        std::printf("[%s] criterion %d: %s\n", c.ok() ? "PASS" : "FAIL", c.id, c.title.c_str());
        for (const Clause& cl : c.clauses)
            std::printf("    [%s] %s\n", cl.ok ? "ok" : "FAIL", cl.text.c_str());
        if (!c.ok()) ++failures;
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
