#include "curv4/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "curv4/errors.hpp"

namespace curv4 {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

std::array<double, 4> effective_margins(const Chart& chart, const ScanConfig& cfg) {
    std::array<double, 4> m = chart.margin;
    if (cfg.margin >= 0) m = {cfg.margin, cfg.margin, cfg.margin, cfg.margin};
    return m;
}

template <class F>
void parallel_cells(long long n, int threads, F&& body) {
    int nt = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nt = std::clamp(nt, 1, 16);
    if (nt <= 1 || n < 64) {
        for (long long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            try {
                for (;;) {
                    const long long chunk = 64;
                    const long long begin = next.fetch_add(chunk);
                    if (begin >= n) return;
                    const long long end = std::min(n, begin + chunk);
                    for (long long i = begin; i < end; ++i) body(i);
                }
            } catch (...) {
                const std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// cached per-point data for the Hermitian scans
struct PointData {
    Matrix3 ap, am, b;  // sigma-basis blocks of R
    Vector3 w;          // sigma+ coordinates of omega/2 (norm 1/sqrt(2))
};

PointData point_data(const CoframeField& cf, const Vec4& x, double fd_step) {
    const PointCurvature pc = curvature_at(cf, x, fd_step);
    PointData d;
    d.ap = pc.op.sigma.topLeftCorner<3, 3>();
    d.am = pc.op.sigma.bottomRightCorner<3, 3>();
    d.b = pc.op.sigma.topRightCorner<3, 3>();
    TwoForm omega;
    if (cf.canonical_j) {
        // omega(.,.) = g(J.,.): Omega matrix = J^T
        omega = from_matrix(cf.canonical_j->transpose());
        const Vector3 asd = asd_coords(omega);
        if (asd.norm() > 1e-8) {
            // canonical J of the opposite orientation would live in sigma-;
            // all catalog structures are oriented, so reject quietly here
            throw ParameterError("canonical J is not compatible with the orientation");
        }
    } else {
        omega = recover_j(pc).omega;
    }
    d.w = 0.5 * sd_coords(omega);
    return d;
}

// bisectional pairing with the inner psi-minimization in closed form
double bisec_min_over_psi(const PointData& d, const Vector3& phi, Vector3* psi_out) {
    const double base = d.w.dot(d.ap * d.w) + d.w.dot(d.b * phi);
    const Vector3 grad = d.b.transpose() * d.w + d.am * phi;
    const double gn = grad.norm();
    if (psi_out) *psi_out = gn > 1e-15 ? Vector3(-grad * (kInvSqrt2 / gn)) : Vector3(-phi);
    return base - kInvSqrt2 * gn;
}

double ortho_bisec(const PointData& d, const Vector3& phi) {
    // psi = -phi: the cross terms cancel
    return d.w.dot(d.ap * d.w) - phi.dot(d.am * phi);
}

double hol_sec(const PointData& d, const Vector3& phi) {
    const Vector3 g = d.b.transpose() * d.w + d.am * phi;
    return d.w.dot(d.ap * d.w) + d.w.dot(d.b * phi) + phi.dot(g);
}

struct Objective {
    std::string name;
    // value at (x, phi); fills psi if relevant
    std::function<double(const PointData&, const Vector3&, Vector3*)> eval;
};

std::array<Vector3, 2> tangent_basis(const Vector3& phi) {
    const Vector3 n = phi.normalized();
    int imin = 0;
    n.cwiseAbs().minCoeff(&imin);
    const Vector3 u = (Vector3::Unit(imin) - n(imin) * n).normalized();
    return {u, n.cross(u)};
}

ScanReport run_scan(const CoframeField& cf, const ScanConfig& cfg, const Objective& obj) {
    cfg.validate();
    const double t0 = now_seconds();

    ScanReport rep;
    rep.functional = obj.name;
    rep.metric = cf.name;
    rep.config = cfg;

    Chart chart = cf.chart;
    chart.margin = effective_margins(cf.chart, cfg);
    const std::vector<Vec4> points = [&] {
        ScanConfig c = cfg;
        c.margin = -1;
        return scan_grid(chart, c);
    }();
    const std::vector<Vector3> dirs = fibonacci_sphere(cfg.sphere_points, kInvSqrt2);

    const long long n = static_cast<long long>(points.size());
    std::vector<double> cell_min(n);
    std::vector<int> cell_dir(n);
    std::vector<double> cell_max(n);

    parallel_cells(n, cfg.threads, [&](long long i) {
        const PointData d = point_data(cf, points[i], cfg.fd_step);
        double best = std::numeric_limits<double>::infinity();
        double worst = -best;
        int bestk = 0;
        for (int k = 0; k < static_cast<int>(dirs.size()); ++k) {
            const double v = obj.eval(d, dirs[k], nullptr);
            if (v < best) {
                best = v;
                bestk = k;
            }
            worst = std::max(worst, v);
        }
        cell_min[i] = best;
        cell_max[i] = worst;
        cell_dir[i] = bestk;
    });

    // deterministic reduction in cell order
    long long imin = 0;
    double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
    double sum = 0, sumsq = 0;
    for (long long i = 0; i < n; ++i) {
        if (cell_min[i] < vmin) {
            vmin = cell_min[i];
            imin = i;
        }
        vmax = std::max(vmax, cell_max[i]);
        sum += cell_min[i];
        sumsq += cell_min[i] * cell_min[i];
    }
    rep.cells = n;
    rep.cell_mean = sum / n;
    rep.cell_stdev = std::sqrt(std::max(0.0, sumsq / n - rep.cell_mean * rep.cell_mean));
    rep.max_value = vmax;
    rep.cell_values = cell_min;

    // coordinate-descent refinement with shrinking steps, monotone by
    // construction
    Vec4 x = points[imin];
    Vector3 phi = dirs[cell_dir[imin]];
    double value = cell_min[imin];
    rep.refine_trace.push_back(value);

    std::array<double, 4> xstep;
    for (int mu = 0; mu < 4; ++mu) {
        const Interval e = chart.effective(mu);
        xstep[mu] = 0.5 * e.length() / std::max(1, cfg.grid[mu] - 1);
    }
    double phistep = 0.5;

    auto eval_at = [&](const Vec4& y, const Vector3& p) {
        const PointData d = point_data(cf, y, cfg.fd_step);
        return obj.eval(d, p, nullptr);
    };

    for (int iter = 0; iter < cfg.refine_iters; ++iter) {
        double best = value;
        Vec4 bx = x;
        Vector3 bphi = phi;
        for (int mu = 0; mu < 4; ++mu)
            for (double sgn : {-1.0, 1.0}) {
                Vec4 y = x;
                const Interval e = chart.effective(mu);
                y(mu) = std::clamp(x(mu) + sgn * xstep[mu], e.lo, e.hi);
                if (y(mu) == x(mu)) continue;
                const double v = eval_at(y, phi);
                if (v < best) {
                    best = v;
                    bx = y;
                    bphi = phi;
                }
            }
        const auto tb = tangent_basis(phi);
        for (const Vector3& dir : tb)
            for (double sgn : {-1.0, 1.0}) {
                Vector3 p = phi + sgn * phistep * dir;
                p *= kInvSqrt2 / p.norm();
                const double v = eval_at(x, p);
                if (v < best) {
                    best = v;
                    bx = x;
                    bphi = p;
                }
            }
        rep.refine_delta = value - best;
        x = bx;
        phi = bphi;
        value = best;
        rep.refine_trace.push_back(value);
        for (double& s : xstep) s *= 0.5;
        phistep *= 0.5;
    }

    rep.min_value = value;
    rep.argmin.x = x;
    rep.argmin.phi = phi;
    {
        const PointData d = point_data(cf, x, cfg.fd_step);
        Vector3 psi;
        obj.eval(d, phi, &psi);
        rep.argmin.psi = psi;
        rep.recheck_value = obj.eval(d, phi, nullptr);
        const PointData dh = point_data(cf, x, 0.5 * cfg.fd_step);
        rep.fd_error = std::abs(obj.eval(dh, phi, nullptr) - rep.recheck_value);
    }
    rep.est_error = rep.fd_error + std::abs(rep.refine_delta) + 1e-14;
    rep.wall_seconds = now_seconds() - t0;
    return rep;
}

}  // namespace

void ScanConfig::validate() const {
    for (int g : grid)
        if (g < 2) throw ParameterError("ScanConfig: grid resolution must be >= 2");
    if (sphere_points < 2) throw ParameterError("ScanConfig: sphere_points must be >= 2");
    if (fd_step <= 0) throw ParameterError("ScanConfig: fd_step must be positive");
    if (refine_iters < 0) throw ParameterError("ScanConfig: refine_iters must be >= 0");
}

std::vector<Vector3> fibonacci_sphere(int n, double radius) {
    std::vector<Vector3> out;
    out.reserve(n);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - 2.0 * (k + 0.5) / n;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double ang = golden * k;
        out.emplace_back(radius * rho * std::cos(ang), radius * rho * std::sin(ang), radius * z);
    }
    return out;
}

std::vector<Vec4> scan_grid(const Chart& chart, const ScanConfig& cfg) {
    Chart c = chart;
    if (cfg.margin >= 0) c.margin = {cfg.margin, cfg.margin, cfg.margin, cfg.margin};
    std::vector<Vec4> pts;
    pts.reserve(static_cast<size_t>(cfg.grid[0]) * cfg.grid[1] * cfg.grid[2] * cfg.grid[3]);
    std::array<std::vector<double>, 4> axis;
    for (int mu = 0; mu < 4; ++mu) {
        const Interval e = c.effective(mu);
        const int n = cfg.grid[mu];
        for (int k = 0; k < n; ++k)
            axis[mu].push_back(e.lo + (e.hi - e.lo) * k / (n - 1));
    }
    for (double a0 : axis[0])
        for (double a1 : axis[1])
            for (double a2 : axis[2])
                for (double a3 : axis[3]) pts.emplace_back(a0, a1, a2, a3);
    return pts;
}

ScanReport scan_bisectional(const CoframeField& cf, const ScanConfig& cfg) {
    return run_scan(cf, cfg,
                    {"bisectional_min", [](const PointData& d, const Vector3& phi, Vector3* psi) {
                         return bisec_min_over_psi(d, phi, psi);
                     }});
}

ScanReport scan_orthogonal_bisectional(const CoframeField& cf, const ScanConfig& cfg) {
    return run_scan(cf, cfg,
                    {"orthogonal_bisectional_min",
                     [](const PointData& d, const Vector3& phi, Vector3* psi) {
                         if (psi) *psi = -phi;
                         return ortho_bisec(d, phi);
                     }});
}

ScanReport scan_holomorphic_sectional(const CoframeField& cf, const ScanConfig& cfg) {
    return run_scan(cf, cfg,
                    {"holomorphic_sectional_min",
                     [](const PointData& d, const Vector3& phi, Vector3* psi) {
                         if (psi) *psi = phi;
                         return hol_sec(d, phi);
                     }});
}

EinsteinScanReport scan_einstein(const CoframeField& cf, const ScanConfig& cfg) {
    cfg.validate();
    const double t0 = now_seconds();
    EinsteinScanReport rep;
    rep.metric = cf.name;
    rep.config = cfg;

    Chart chart = cf.chart;
    chart.margin = effective_margins(cf.chart, cfg);
    ScanConfig c = cfg;
    c.margin = -1;
    const std::vector<Vec4> points = scan_grid(chart, c);
    const long long n = static_cast<long long>(points.size());

    std::vector<double> resid(n), svals(n);
    parallel_cells(n, cfg.threads, [&](long long i) {
        const PointCurvature pc = curvature_at(cf, points[i], cfg.fd_step);
        resid[i] = einstein_residual(pc);
        svals[i] = pc.s;
    });

    double vmax = -1;
    long long imax = 0;
    double sum = 0, sumsq = 0;
    for (long long i = 0; i < n; ++i) {
        if (resid[i] > vmax) {
            vmax = resid[i];
            imax = i;
        }
        sum += svals[i];
        sumsq += svals[i] * svals[i];
    }
    rep.max_residual = vmax;
    rep.arg_max = points[imax];
    rep.s_mean = sum / n;
    rep.s_stdev = std::sqrt(std::max(0.0, sumsq / n - rep.s_mean * rep.s_mean));
    rep.cells = n;
    rep.residuals = resid;
    rep.wall_seconds = now_seconds() - t0;
    return rep;
}

ConformalKahler conformal_kahler(const CoframeField& cf, double fd_step, double grad_step) {
    auto lambda_top = [cf, fd_step](const Vec4& x) {
        const PointCurvature pc = curvature_at(cf, x, fd_step);
        Eigen::SelfAdjointEigenSolver<Matrix3> es(pc.wplus);
        return es.eigenvalues()(2);
    };
    auto stilde = [lambda_top](const Vec4& x) {
        const double l = lambda_top(x);
        // anything at finite-difference noise scale counts as non-positive
        if (l <= 1e-10)
            throw NonpositiveEigenvalueError("conformal_kahler: top eigenvalue of W+ <= 0");
        return std::cbrt(6.0 * l);
    };

    // g~ = stilde^2 g: coframe stilde * e with product-rule jet; the gradient
    // of stilde comes from 4th-order central differences of the eigenvalue
    // field.
    auto grad_stilde = [stilde, grad_step](const Vec4& x) {
        Vec4 g;
        for (int nu = 0; nu < 4; ++nu) {
            Vec4 dx = Vec4::Zero();
            dx(nu) = grad_step;
            const double dh = (stilde(x + dx) - stilde(x - dx)) / (2 * grad_step);
            const double dh2 = (stilde(x + 0.5 * dx) - stilde(x - 0.5 * dx)) / grad_step;
            g(nu) = (4.0 * dh2 - dh) / 3.0;
        }
        return g;
    };

    ConformalKahler out;
    out.fd_step = fd_step;
    out.grad_step = grad_step;
    out.stilde = stilde;
    out.wminus_tilde = [cf, fd_step, stilde](const Vec4& x) {
        const PointCurvature pc = curvature_at(cf, x, fd_step);
        const double st = stilde(x);
        return Matrix3((pc.wminus / (st * st)).eval());
    };

    CoframeField gt;
    gt.chart = cf.chart;
    // the conformal jet needs finite-difference room inside the raw domain
    const double shrink = 1.25 * grad_step + 2 * fd_step;
    for (int mu = 0; mu < 4; ++mu) {
        gt.chart.margin[mu] = std::max(cf.chart.margin[mu], shrink);
    }
    gt.name = cf.name + "~kahler";
    gt.coeff = [cf, stilde](const Vec4& x) { return Matrix4(stilde(x) * cf.coeff(x)); };
    gt.dcoeff = [cf, stilde, grad_stilde](const Vec4& x) {
        const double st = stilde(x);
        const Vec4 gs = grad_stilde(x);
        const Matrix4 e = cf.coeff(x);
        CoframeJet jet = cf.dcoeff(x);
        for (int nu = 0; nu < 4; ++nu) jet[nu] = st * jet[nu] + gs(nu) * e;
        return jet;
    };
    out.gtilde = gt;
    return out;
}

EstimatesReport check_estimates(const CoframeField& cf, const ScanConfig& cfg) {
    cfg.validate();
    const double t0 = now_seconds();
    EstimatesReport rep;
    rep.metric = cf.name;
    rep.config = cfg;

    const ConformalKahler ck = conformal_kahler(cf, cfg.fd_step);

    Chart chart = cf.chart;
    chart.margin = effective_margins(cf.chart, cfg);
    for (int mu = 0; mu < 4; ++mu)
        chart.margin[mu] = std::max(chart.margin[mu], ck.gtilde.chart.margin[mu]);
    ScanConfig c = cfg;
    c.margin = -1;
    const std::vector<Vec4> points = scan_grid(chart, c);
    const long long n = static_cast<long long>(points.size());

    std::vector<double> q1(n), st(n);
    parallel_cells(n, cfg.threads, [&](long long i) {
        const double stv = ck.stilde(points[i]);
        Eigen::SelfAdjointEigenSolver<Matrix3> es(ck.wminus_tilde(points[i]));
        q1[i] = es.eigenvalues()(2) - stv / 6.0;
        st[i] = stv;
    });

    double best = -std::numeric_limits<double>::infinity();
    long long ib = 0;
    double stmin = std::numeric_limits<double>::infinity(), stmax = -stmin;
    for (long long i = 0; i < n; ++i) {
        if (q1[i] > best) {
            best = q1[i];
            ib = i;
        }
        stmin = std::min(stmin, st[i]);
        stmax = std::max(stmax, st[i]);
    }
    rep.first_estimate_max = best;
    rep.first_estimate_arg = points[ib];
    // over the |phi| = 1/sqrt(2) sphere, max <W~- phi, phi> = lambda_max/2, so
    // the second quantity is exactly half the first
    rep.second_estimate_max = 0.5 * best;
    rep.second_estimate_arg = points[ib];
    rep.stilde_min = stmin;
    rep.stilde_max = stmax;
    rep.cells = n;

    // self-consistency: scalar curvature of g~ vs (6 lambda_+)^{1/3} on a
    // coarse deterministic subgrid, with margins wide enough for the nested
    // finite differences and clear of the steep chart ends
    const double h_out = std::max(1.5 * ck.grad_step, 3e-2);
    ScanConfig sub = cfg;
    sub.grid = {std::min(cfg.consistency_grid, cfg.grid[0]),
                std::min(cfg.consistency_grid, cfg.grid[1]),
                std::min(cfg.consistency_grid, cfg.grid[2]),
                std::min(cfg.consistency_grid, cfg.grid[3])};
    sub.margin = -1;
    Chart subchart = chart;
    for (int mu = 0; mu < 4; ++mu)
        subchart.margin[mu] =
            std::max(chart.margin[mu], ck.gtilde.chart.margin[mu] + 1.25 * h_out + 0.05);
    const std::vector<Vec4> subpts = scan_grid(subchart, sub);
    double cons = 0;
    for (const Vec4& x : subpts) {
        const PointCurvature pct = curvature_at(ck.gtilde, x, h_out);
        const double target = ck.stilde(x);
        cons = std::max(cons, std::abs(pct.s - target) / std::abs(target));
    }
    rep.consistency_max = cons;
    rep.wall_seconds = now_seconds() - t0;
    return rep;
}

}  // namespace curv4
