#include "curv4/hermitian.hpp"

#include <cmath>

#include "curv4/errors.hpp"

namespace curv4 {

ComplexLineForm ComplexLineForm::from_asd_coords(const Vector3& c) {
    const double n = c.norm();
    if (n < 1e-14) throw ParameterError("ComplexLineForm: zero direction");
    return {asd_form(c * (1.0 / (std::sqrt(2.0) * n)))};
}

ComplexLineForm ComplexLineForm::of_line(const ComplexStructureData& cs, const Vec4& x) {
    if (std::abs(x.norm() - 1.0) > 1e-8)
        throw NonUnitVectorError("ComplexLineForm::of_line: |X| != 1");
    auto [sd, asd] = sd_asd_split(wedge(x, cs.j * x));
    (void)sd;
    return {asd};
}

Matrix4 j_from_omega(const TwoForm& omega) {
    // omega_{ij} = <J e_i, e_j>  =>  J = -Omega as matrices
    return -as_matrix(omega);
}

ComplexStructureData structure_from_omega(const TwoForm& omega) {
    return {omega, j_from_omega(omega)};
}

ComplexStructureData recover_j(const PointCurvature& pc, double gap_tol) {
    Eigen::SelfAdjointEigenSolver<Matrix3> es(pc.wplus);
    const Vector3 ev = es.eigenvalues();  // ascending
    if (ev(2) - ev(1) < gap_tol)
        throw DegenerateWplusError("recover_j: top eigenvalue of W+ is not simple");
    Vector3 u = es.eigenvectors().col(2);
    int imax = 0;
    u.cwiseAbs().maxCoeff(&imax);
    if (u(imax) < 0) u = -u;
    return structure_from_omega(sd_form(std::sqrt(2.0) * u));
}

double bisectional(const PointCurvature& pc, const ComplexStructureData& cs,
                   const ComplexLineForm& phi, const ComplexLineForm& psi) {
    const TwoForm a = 0.5 * cs.omega + phi.phi;
    const TwoForm b = 0.5 * cs.omega + psi.phi;
    return pc.op.pair(a, b);
}

double bisectional_direct(const PointCurvature& pc, const ComplexStructureData& cs,
                          const Vec4& x, const Vec4& y) {
    if (std::abs(x.norm() - 1.0) > 1e-8 || std::abs(y.norm() - 1.0) > 1e-8)
        throw NonUnitVectorError("bisectional_direct: inputs must be unit vectors");
    return pc.rm(x, cs.j * x, y, cs.j * y);
}

double kahler_bisec_identity_residual(const PointCurvature& pc, const ComplexStructureData& cs,
                                      const Vec4& x, const Vec4& y) {
    if (wedge(x, y).norm() < 1e-10 || wedge(x, cs.j * y).norm() < 1e-10)
        throw DegeneratePlaneError("kahler_bisec_identity_residual: degenerate plane");
    // Unitary holonomy splits the bisectional value into the two plane values
    // Rm(X,Y,X,Y) + Rm(X,JY,X,JY) for unit X, Y; the normalized sectional
    // version of the identity only holds when the lines are orthogonal.
    const double h = bisectional_direct(pc, cs, x, y);
    return std::abs(h - pc.rm(x, y, x, y) - pc.rm(x, cs.j * y, x, cs.j * y));
}

double sectional(const PointCurvature& pc, const Vec4& x, const Vec4& y) {
    TwoForm u = wedge(x, y);
    const double n = u.norm();
    if (n < 1e-10) throw DegeneratePlaneError("sectional: degenerate plane");
    u /= n;
    return pc.op.pair(u, u);
}

}  // namespace curv4
