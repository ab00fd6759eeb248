#include "curv4/curvature.hpp"

#include <cmath>

#include "curv4/errors.hpp"

namespace curv4 {

namespace {

using Mat64 = Eigen::Matrix<double, 6, 4>;

Mat64 coordinate_connection(const CoframeField& cf, const Vec4& x) {
    const ConnectionAtPoint conn = connection_at(cf, x);
    return conn.coordinate_coeff(cf.coeff(x));
}

}  // namespace

double PointCurvature::rm(int i, int j, int k, int l) const {
    if (i == j || k == l) return 0.0;
    const Matrix6 mw = op.wedge_matrix();
    auto [a, sa] = wedge_slot(i, j);
    auto [b, sb] = wedge_slot(k, l);
    return sa * sb * mw(a, b);
}

PointCurvature curvature_at(const CoframeField& cf, const Vec4& x, double fd_step) {
    if (fd_step <= 0) throw ParameterError("curvature_at: fd_step must be positive");
    if (cf.chart.boundary_distance(x) <= fd_step)
        throw StepTooLargeError("curvature_at: fd_step exceeds distance to chart boundary");

    const Matrix4 e = cf.coeff(x);
    if (std::abs(e.determinant()) < 1e-10)
        throw SingularCoframeError("curvature_at: singular coframe");
    const Matrix4 einv = e.inverse();
    const ConnectionAtPoint conn = connection_at(cf, x);

    // d_nu of the coordinate connection components, central difference with
    // one Richardson step: (4 D_{h/2} - D_h)/3
    std::array<Mat64, 4> dw;
    for (int nu = 0; nu < 4; ++nu) {
        Vec4 dx = Vec4::Zero();
        dx(nu) = fd_step;
        const Mat64 dh =
            (coordinate_connection(cf, x + dx) - coordinate_connection(cf, x - dx)) /
            (2 * fd_step);
        const Mat64 dh2 =
            (coordinate_connection(cf, x + 0.5 * dx) - coordinate_connection(cf, x - 0.5 * dx)) /
            fd_step;
        dw[nu] = (4.0 * dh2 - dh) / 3.0;
    }

    Matrix6 mw;
    for (int a6 = 0; a6 < 6; ++a6) {
        // curvature 2-form of pair A: d omega_A + omega_{ik} ^ omega_{kj}
        Matrix4 g;  // g(nu, mu) = d_nu W(A, mu)
        for (int nu = 0; nu < 4; ++nu) g.row(nu) = dw[nu].row(a6);
        const Matrix4 c = einv.transpose() * g * einv;
        Matrix4 omega_frame = c - c.transpose();  // d omega_A (E_a, E_b)

        const int i = kWedgeI[a6], j = kWedgeJ[a6];
        for (int b6 = 0; b6 < 6; ++b6) {
            const int a = kWedgeI[b6], b = kWedgeJ[b6];
            double quad = 0.0;
            for (int k = 0; k < 4; ++k)
                quad += conn.omega_k[a](i, k) * conn.omega_k[b](k, j) -
                        conn.omega_k[b](i, k) * conn.omega_k[a](k, j);
            mw(a6, b6) = omega_frame(a, b) + quad;
        }
    }

    PointCurvature pc;
    pc.assembly_asymmetry = (mw - mw.transpose()).norm();
    mw = 0.5 * (mw + mw.transpose()).eval();

    pc.op = OperatorOnForms::from_wedge_matrix(mw);
    pc.s = 2.0 * mw.trace();
    pc.wplus = pc.op.sigma.topLeftCorner<3, 3>() - (pc.s / 12.0) * Matrix3::Identity();
    pc.wminus = pc.op.sigma.bottomRightCorner<3, 3>() - (pc.s / 12.0) * Matrix3::Identity();
    pc.rr = pc.op.sigma.topRightCorner<3, 3>();

    // ricci(j, l) = sum_i Rm(e_i, e_j, e_i, e_l); terms with i == j or i == l
    // vanish identically
    for (int j2 = 0; j2 < 4; ++j2)
        for (int l = j2; l < 4; ++l) {
            double r = 0.0;
            for (int i2 = 0; i2 < 4; ++i2) {
                if (i2 == j2 || i2 == l) continue;
                auto [a, sa] = wedge_slot(i2, j2);
                auto [b, sb] = wedge_slot(i2, l);
                r += sa * sb * mw(a, b);
            }
            pc.ricci(j2, l) = r;
            pc.ricci(l, j2) = r;
        }

    return pc;
}

double einstein_residual(const PointCurvature& pc) {
    const double dev = (pc.ricci - (pc.s / 4.0) * Matrix4::Identity()).norm();
    return std::max(pc.rr.norm(), dev);
}

}  // namespace curv4
