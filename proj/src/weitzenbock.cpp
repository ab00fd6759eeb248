#include "curv4/weitzenbock.hpp"

#include <cmath>

#include "curv4/errors.hpp"

namespace curv4 {

namespace {

using Mat64 = Eigen::Matrix<double, 6, 4>;

int perm_sign(int a, int b, int c) {
    // parity of (a,b,c) against its sorted order
    int s = 1;
    if (a > b) { std::swap(a, b); s = -s; }
    if (b > c) { std::swap(b, c); s = -s; }
    if (a > b) { std::swap(a, b); s = -s; }
    return s;
}

int eps4(int a, int b, int c, int d) {
    int p[4] = {a, b, c, d};
    int sign = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            if (p[i] == p[j]) return 0;
            if (p[i] > p[j]) sign = -sign;
        }
    return sign;
}

// 3-forms are stored as c(lambda) = psi(increasing complement of lambda)
struct ThreeForm {
    Vec4 c = Vec4::Zero();
};

double three_comp(const ThreeForm& psi, int a, int b, int c) {
    if (a == b || b == c || a == c) return 0.0;
    const int lambda = 6 - a - b - c;
    return perm_sign(a, b, c) * psi.c(lambda);
}

struct MetricData {
    Matrix4 g, gi;
    double vol;  // det(e): sqrt(det g) signed by the frame orientation
};

MetricData metric_data(const Matrix4& e) {
    MetricData m;
    m.g = e.transpose() * e;
    m.gi = m.g.inverse();
    m.vol = e.determinant();
    return m;
}

// jets of g, g^{-1}, vol from the coframe jet
struct MetricJet {
    std::array<Matrix4, 4> dg, dgi;
    Vec4 dvol;
};

MetricJet metric_jet(const Matrix4& e, const CoframeJet& de, const MetricData& m) {
    MetricJet out;
    const Matrix4 einv = e.inverse();
    for (int nu = 0; nu < 4; ++nu) {
        out.dg[nu] = de[nu].transpose() * e + e.transpose() * de[nu];
        out.dgi[nu] = -m.gi * out.dg[nu] * m.gi;
        out.dvol(nu) = m.vol * (einv * de[nu]).trace();
    }
    return out;
}

Matrix4 star2(const MetricData& m, const Matrix4& phi) {
    const Matrix4 up = m.gi * phi * m.gi;
    Matrix4 out = Matrix4::Zero();
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) {
            double v = 0;
            for (int r = 0; r < 4; ++r)
                for (int s = 0; s < 4; ++s) {
                    const int sg = eps4(mu, nu, r, s);
                    if (sg) v += sg * up(r, s);
                }
            out(mu, nu) = 0.5 * m.vol * v;
            out(nu, mu) = -out(mu, nu);
        }
    return out;
}

Vec4 star3(const MetricData& m, const ThreeForm& psi) {
    Vec4 out = Vec4::Zero();
    for (int mu = 0; mu < 4; ++mu) {
        double v = 0;
        for (int n = 0; n < 4; ++n)
            for (int r = 0; r < 4; ++r)
                for (int s = 0; s < 4; ++s) {
                    const int sg = eps4(n, r, s, mu);
                    if (!sg) continue;
                    double up = 0;
                    for (int a = 0; a < 4; ++a)
                        for (int b = 0; b < 4; ++b)
                            for (int c = 0; c < 4; ++c)
                                up += m.gi(n, a) * m.gi(r, b) * m.gi(s, c) *
                                      three_comp(psi, a, b, c);
                    v += sg * up;
                }
        out(mu) = m.vol * v / 6.0;
    }
    return out;
}

// exterior derivative of a 2-form from its first partials dphi[nu] = d_nu phi
ThreeForm d_two(const std::array<Matrix4, 4>& dphi) {
    ThreeForm out;
    for (int l = 0; l < 4; ++l) {
        int idx[3], n = 0;
        for (int mu = 0; mu < 4; ++mu)
            if (mu != l) idx[n++] = mu;
        const int a = idx[0], b = idx[1], c = idx[2];
        out.c(l) = dphi[a](b, c) - dphi[b](a, c) + dphi[c](a, b);
    }
    return out;
}

Matrix4 coord_matrix(const Vector6& comp) {
    Matrix4 m = Matrix4::Zero();
    for (int a = 0; a < 6; ++a) {
        m(kWedgeI[a], kWedgeJ[a]) = comp(a);
        m(kWedgeJ[a], kWedgeI[a]) = -comp(a);
    }
    return m;
}

// codifferential of phi (coordinate 2-form with analytic partials): -*d*phi,
// exactly evaluable from the coframe jet
Vec4 codifferential(const CoframeField& cf, const TwoFormField& field, const Vec4& x) {
    const Matrix4 e = cf.coeff(x);
    const CoframeJet de = cf.dcoeff(x);
    const MetricData m = metric_data(e);
    const MetricJet mj = metric_jet(e, de, m);

    const Matrix4 phi = coord_matrix(field.comp(x));
    const Mat64 d1 = field.d1(x);
    std::array<Matrix4, 4> dphi;
    for (int nu = 0; nu < 4; ++nu) dphi[nu] = coord_matrix(d1.col(nu));

    // d_nu (*phi) by the product rule through vol, g^{-1}, phi
    const Matrix4 up = m.gi * phi * m.gi;
    std::array<Matrix4, 4> dstar;
    for (int nu = 0; nu < 4; ++nu) {
        const Matrix4 dup =
            mj.dgi[nu] * phi * m.gi + m.gi * dphi[nu] * m.gi + m.gi * phi * mj.dgi[nu];
        Matrix4 t = Matrix4::Zero();
        for (int mu = 0; mu < 4; ++mu)
            for (int nu2 = mu + 1; nu2 < 4; ++nu2) {
                double v = 0;
                for (int r = 0; r < 4; ++r)
                    for (int s = 0; s < 4; ++s) {
                        const int sg = eps4(mu, nu2, r, s);
                        if (sg) v += sg * (mj.dvol(nu) * up(r, s) + m.vol * dup(r, s));
                    }
                t(mu, nu2) = 0.5 * v;
                t(nu2, mu) = -t(mu, nu2);
            }
        dstar[nu] = t;
    }

    return -star3(m, d_two(dstar));
}

// delta(d phi) = -*d*(d phi), exactly evaluable (uses the second partials)
Matrix4 codifferential_of_d(const CoframeField& cf, const TwoFormField& field, const Vec4& x) {
    const Matrix4 e = cf.coeff(x);
    const CoframeJet de = cf.dcoeff(x);
    const MetricData m = metric_data(e);
    const MetricJet mj = metric_jet(e, de, m);

    const Mat64 d1 = field.d1(x);
    const auto d2 = field.d2(x);
    std::array<Matrix4, 4> dphi;
    for (int nu = 0; nu < 4; ++nu) dphi[nu] = coord_matrix(d1.col(nu));

    const ThreeForm dp = d_two(dphi);
    // d_rho of (d phi)
    std::array<ThreeForm, 4> ddp;
    for (int rho = 0; rho < 4; ++rho) {
        std::array<Matrix4, 4> second;
        for (int nu = 0; nu < 4; ++nu) second[nu] = coord_matrix(d2[rho].col(nu));
        ddp[rho] = d_two(second);
    }

    // eta = *(d phi): partials by the product rule
    Matrix4 deta_rows;  // (rho, mu) = d_rho eta_mu
    for (int rho = 0; rho < 4; ++rho) {
        // derivative of star3 through vol, gi, dp
        Vec4 v = Vec4::Zero();
        for (int mu = 0; mu < 4; ++mu) {
            double acc = 0;
            for (int n = 0; n < 4; ++n)
                for (int r = 0; r < 4; ++r)
                    for (int s = 0; s < 4; ++s) {
                        const int sg = eps4(n, r, s, mu);
                        if (!sg) continue;
                        double up = 0, dup = 0;
                        for (int a = 0; a < 4; ++a)
                            for (int b = 0; b < 4; ++b)
                                for (int c = 0; c < 4; ++c) {
                                    const double t = three_comp(dp, a, b, c);
                                    const double dt = three_comp(ddp[rho], a, b, c);
                                    up += m.gi(n, a) * m.gi(r, b) * m.gi(s, c) * t;
                                    dup += (mj.dgi[rho](n, a) * m.gi(r, b) * m.gi(s, c) +
                                            m.gi(n, a) * mj.dgi[rho](r, b) * m.gi(s, c) +
                                            m.gi(n, a) * m.gi(r, b) * mj.dgi[rho](s, c)) *
                                               t +
                                           m.gi(n, a) * m.gi(r, b) * m.gi(s, c) * dt;
                                }
                        acc += sg * (mj.dvol(rho) * up + m.vol * dup);
                    }
            v(mu) = acc / 6.0;
        }
        deta_rows.row(rho) = v.transpose();
    }

    // d eta then -*2
    Matrix4 deta = Matrix4::Zero();
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) deta(mu, nu) = deta_rows(mu, nu) - deta_rows(nu, mu);
    return -star2(m, deta);
}

// frame components of the field at y, as an antisymmetric matrix
Matrix4 frame_comps(const CoframeField& cf, const TwoFormField& field, const Vec4& y) {
    const Matrix4 einv = cf.coeff(y).inverse();
    return einv.transpose() * coord_matrix(field.comp(y)) * einv;
}

// analytic first covariant derivative along frame vector E_k, frame comps
Matrix4 covariant_along(const CoframeField& cf, const TwoFormField& field, const Vec4& y,
                        int k) {
    const Matrix4 e = cf.coeff(y);
    const CoframeJet de = cf.dcoeff(y);
    const Matrix4 einv = e.inverse();
    const Matrix4 phi = coord_matrix(field.comp(y));
    const Mat64 d1 = field.d1(y);

    // d_mu of frame comps: d(einv) = -einv de einv
    Matrix4 dir = Matrix4::Zero();  // E_k(frame comps)
    for (int mu = 0; mu < 4; ++mu) {
        const Matrix4 deinv = -einv * de[mu] * einv;
        const Matrix4 dframe = deinv.transpose() * phi * einv +
                               einv.transpose() * coord_matrix(d1.col(mu)) * einv +
                               einv.transpose() * phi * deinv;
        dir += einv(mu, k) * dframe;
    }
    const ConnectionAtPoint conn = connection_at(cf, y);
    const Matrix4 frame = einv.transpose() * phi * einv;
    return dir + conn.omega_k[k] * frame - frame * conn.omega_k[k];
}

}  // namespace

double weitzenbock_residual(const CoframeField& cf, const TwoFormField& field, const Vec4& x,
                            double fd_step) {
    if (!field.comp || !field.d1 || !field.d2)
        throw UnsupportedFieldError("weitzenbock_residual: field lacks analytic partials");
    if (cf.chart.boundary_distance(x) <= 2 * fd_step)
        throw StepTooLargeError("weitzenbock_residual: fd_step too large for chart point");

    const Matrix4 e = cf.coeff(x);
    const Matrix4 einv = e.inverse();

    // Hodge Laplacian: d(delta phi) by Richardson differences of the analytic
    // codifferential, plus the fully analytic delta(d phi)
    Matrix4 d_delta = Matrix4::Zero();
    {
        Eigen::Matrix4d rows;  // (nu, mu) = d_nu (delta phi)_mu
        for (int nu = 0; nu < 4; ++nu) {
            Vec4 dx = Vec4::Zero();
            dx(nu) = fd_step;
            const Vec4 dh = (codifferential(cf, field, x + dx) -
                             codifferential(cf, field, x - dx)) /
                            (2 * fd_step);
            const Vec4 dh2 = (codifferential(cf, field, x + 0.5 * dx) -
                              codifferential(cf, field, x - 0.5 * dx)) /
                             fd_step;
            rows.row(nu) = ((4.0 * dh2 - dh) / 3.0).transpose();
        }
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) d_delta(mu, nu) = rows(mu, nu) - rows(nu, mu);
    }
    const Matrix4 hodge_coord = d_delta + codifferential_of_d(cf, field, x);
    const Matrix4 hodge_frame = einv.transpose() * hodge_coord * einv;

    // rough Laplacian
    const ConnectionAtPoint conn = connection_at(cf, x);
    Matrix4 rough = Matrix4::Zero();
    for (int k = 0; k < 4; ++k) {
        // E_k(T_k) by Richardson differences of the analytic first derivative
        Matrix4 dir = Matrix4::Zero();
        for (int mu = 0; mu < 4; ++mu) {
            Vec4 dx = Vec4::Zero();
            dx(mu) = fd_step;
            const Matrix4 dh =
                (covariant_along(cf, field, x + dx, k) - covariant_along(cf, field, x - dx, k)) /
                (2 * fd_step);
            const Matrix4 dh2 = (covariant_along(cf, field, x + 0.5 * dx, k) -
                                 covariant_along(cf, field, x - 0.5 * dx, k)) /
                                fd_step;
            dir += einv(mu, k) * (4.0 * dh2 - dh) / 3.0;
        }
        const Matrix4 tk = covariant_along(cf, field, x, k);
        rough -= dir + conn.omega_k[k] * tk - tk * conn.omega_k[k];
    }
    // + nabla_{nabla_{E_k} E_k} phi
    for (int i = 0; i < 4; ++i) {
        double vi = 0;
        for (int k = 0; k < 4; ++k) vi += conn.omega_k[k](i, k);
        if (vi != 0.0) rough += vi * covariant_along(cf, field, x, i);
    }

    // curvature terms
    const PointCurvature pc = curvature_at(cf, x, fd_step);
    const TwoForm phi_frame = from_matrix(frame_comps(cf, field, x));
    Vector6 sig = sigma_from_wedge(phi_frame);
    Vector6 wsig;
    wsig.head<3>() = pc.wplus * sig.head<3>();
    wsig.tail<3>() = pc.wminus * sig.tail<3>();
    const TwoForm w_phi = wedge_from_sigma(wsig);

    const TwoForm rhs = from_matrix(rough) - 2.0 * w_phi + (pc.s / 3.0) * phi_frame;
    return (from_matrix(hodge_frame) - rhs).norm();
}

std::vector<TwoFormField> sample_form_fields(const std::string& metric_base) {
    using M64 = Eigen::Matrix<double, 6, 4>;
    if (metric_base == "t4") {
        TwoFormField f1;  // sin(x1) dx0^dx1
        f1.comp = [](const Vec4& x) {
            Vector6 c = Vector6::Zero();
            c(0) = std::sin(x(1));
            return c;
        };
        f1.d1 = [](const Vec4& x) {
            M64 d = M64::Zero();
            d(0, 1) = std::cos(x(1));
            return d;
        };
        f1.d2 = [](const Vec4& x) {
            std::array<M64, 4> d{M64::Zero(), M64::Zero(), M64::Zero(), M64::Zero()};
            d[1](0, 1) = -std::sin(x(1));
            return d;
        };

        TwoFormField f2;  // constant coefficients
        f2.comp = [](const Vec4&) {
            Vector6 c;
            c << 0.3, -0.2, 0.7, 0.1, -0.4, 0.5;
            return c;
        };
        f2.d1 = [](const Vec4&) { return M64::Zero().eval(); };
        f2.d2 = [](const Vec4&) {
            return std::array<M64, 4>{M64::Zero(), M64::Zero(), M64::Zero(), M64::Zero()};
        };

        TwoFormField f3;  // cos(x0) dx2^dx3 + sin(x2) dx1^dx2
        f3.comp = [](const Vec4& x) {
            Vector6 c = Vector6::Zero();
            c(3) = std::cos(x(0));
            c(5) = std::sin(x(2));
            return c;
        };
        f3.d1 = [](const Vec4& x) {
            M64 d = M64::Zero();
            d(3, 0) = -std::sin(x(0));
            d(5, 2) = std::cos(x(2));
            return d;
        };
        f3.d2 = [](const Vec4& x) {
            std::array<M64, 4> d{M64::Zero(), M64::Zero(), M64::Zero(), M64::Zero()};
            d[0](3, 0) = -std::cos(x(0));
            d[2](5, 2) = -std::sin(x(2));
            return d;
        };
        return {f1, f2, f3};
    }
    if (metric_base == "s4") {
        TwoFormField f;  // chi1 chi2 dchi1^dchi2 + chi3^2 dchi3^dchi4 + (chi1 + chi3/2) dchi2^dchi3
        f.comp = [](const Vec4& x) {
            Vector6 c = Vector6::Zero();
            c(0) = x(0) * x(1);
            c(3) = x(2) * x(2);
            c(5) = x(0) + 0.5 * x(2);
            return c;
        };
        f.d1 = [](const Vec4& x) {
            M64 d = M64::Zero();
            d(0, 0) = x(1);
            d(0, 1) = x(0);
            d(3, 2) = 2 * x(2);
            d(5, 0) = 1.0;
            d(5, 2) = 0.5;
            return d;
        };
        f.d2 = [](const Vec4&) {
            std::array<M64, 4> d{M64::Zero(), M64::Zero(), M64::Zero(), M64::Zero()};
            d[0](0, 1) = 1.0;
            d[1](0, 0) = 1.0;
            d[2](3, 2) = 2.0;
            return d;
        };
        return {f};
    }
    throw UnsupportedFieldError("sample_form_fields: no analytic fields for " + metric_base);
}

}  // namespace curv4
