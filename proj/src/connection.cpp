#include "curv4/connection.hpp"

#include <cmath>

#include "curv4/errors.hpp"

namespace curv4 {

namespace {

// A[i][j][k] = de^i(E_j, E_k) from the analytic coframe jet
std::array<Matrix4, 4> anholonomy(const Matrix4& e, const CoframeJet& de, const Matrix4& einv) {
    // de^i = d_nu e^i_mu dx^nu ^ dx^mu;  de^i(E_j, E_k) with E_j^nu = einv(nu, j)
    std::array<Matrix4, 4> a{Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero()};
    (void)e;
    for (int i = 0; i < 4; ++i) {
        Matrix4 g = Matrix4::Zero();  // g(nu, mu) = d_nu e^i_mu
        for (int nu = 0; nu < 4; ++nu) g.row(nu) = de[nu].row(i);
        const Matrix4 c = einv.transpose() * g * einv;  // c(j,k) = E_j^nu g(nu,mu) E_k^mu
        a[i] = c - c.transpose();
    }
    return a;
}

}  // namespace

ConnectionAtPoint connection_at(const CoframeField& cf, const Vec4& x) {
    const Matrix4 e = cf.coeff(x);
    const double det = e.determinant();
    if (std::abs(det) < 1e-10)
        throw SingularCoframeError("connection_at: |det e| < 1e-10 at chart point");
    const Matrix4 einv = e.inverse();
    const auto a = anholonomy(e, cf.dcoeff(x), einv);

    // Koszul in the orthonormal frame: with A_{ijk} = de^i(E_j, E_k),
    //   omega_{ij,k} = (1/2)(-A_{ikj} + A_{jki} + A_{kji})
    ConnectionAtPoint conn;
    for (int k = 0; k < 4; ++k) {
        Matrix4 om = Matrix4::Zero();
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                const double v = 0.5 * (-a[i](k, j) + a[j](k, i) + a[k](j, i));
                om(i, j) = v;
                om(j, i) = -v;
            }
        conn.omega_k[k] = om;
    }
    return conn;
}

double structure_residual(const CoframeField& cf, const Vec4& x) {
    const Matrix4 e = cf.coeff(x);
    const CoframeJet de = cf.dcoeff(x);
    const ConnectionAtPoint conn = connection_at(cf, x);
    const Eigen::Matrix<double, 6, 4> w = conn.coordinate_coeff(e);  // omega_{ij,mu}

    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        // (de^i)_{nu mu} = d_nu e^i_mu - d_mu e^i_nu
        Matrix4 t = Matrix4::Zero();
        for (int nu = 0; nu < 4; ++nu)
            for (int mu = 0; mu < 4; ++mu) t(nu, mu) = de[nu](i, mu) - de[mu](i, nu);
        // + (omega_{ij} ^ e^j)_{nu mu}
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            auto [slot, sign] = wedge_slot(i, j);
            for (int nu = 0; nu < 4; ++nu)
                for (int mu = 0; mu < 4; ++mu)
                    t(nu, mu) += sign * (w(slot, nu) * e(j, mu) - w(slot, mu) * e(j, nu));
        }
        worst = std::max(worst, t.norm());
    }
    return worst;
}

}  // namespace curv4
