#pragma once

#include "curv4/coframe.hpp"

namespace curv4 {

/// Levi-Civita connection coefficients at a point, in the orthonormal frame:
/// omega_{ij} = omega_{ij,k} e^k with omega_{ij,k} = -omega_{ji,k}.
struct ConnectionAtPoint {
    /// omega_k[k](i, j) = omega_{ij,k}; each slice is antisymmetric
    std::array<Matrix4, 4> omega_k{Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero(),
                                   Matrix4::Zero()};

    double omega(int i, int j, int k) const { return omega_k[k](i, j); }

    /// coordinate components W(A, mu) of the six 1-forms omega_{ij}, rows in
    /// the wedge pair order, given the coframe matrix at the same point
    Eigen::Matrix<double, 6, 4> coordinate_coeff(const Matrix4& e) const {
        Eigen::Matrix<double, 6, 4> w;
        for (int a = 0; a < 6; ++a) {
            const int i = kWedgeI[a], j = kWedgeJ[a];
            for (int mu = 0; mu < 4; ++mu) {
                double v = 0;
                for (int k = 0; k < 4; ++k) v += omega_k[k](i, j) * e(k, mu);
                w(a, mu) = v;
            }
        }
        return w;
    }
};

/// Solve the first structure equation de^i + omega^i_j ^ e^j = 0 in closed
/// form from the anholonomy coefficients (the unique torsion-free,
/// metric-compatible solution).
ConnectionAtPoint connection_at(const CoframeField& cf, const Vec4& x);

/// max_i || de^i + omega^i_j ^ e^j || evaluated with the analytic coframe
/// partials; a pure self-check of the solve
double structure_residual(const CoframeField& cf, const Vec4& x);

}  // namespace curv4
