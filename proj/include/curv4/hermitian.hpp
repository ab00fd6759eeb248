#pragma once

#include "curv4/curvature.hpp"

namespace curv4 {

/// Kaehler 2-form (|omega| = sqrt(2), self-dual) and the almost-complex
/// endomorphism it raises, in frame components.
struct ComplexStructureData {
    TwoForm omega;
    Matrix4 j;
};

/// Anti-self-dual form of norm 1/sqrt(2); together with omega/2 it labels a
/// complex line in the tangent space.
struct ComplexLineForm {
    TwoForm phi;

    static ComplexLineForm from_asd_coords(const Vector3& c);
    /// ASD part of X ^ JX for a unit vector X
    static ComplexLineForm of_line(const ComplexStructureData& cs, const Vec4& x);
};

/// endomorphism J with omega(.,.) = g(J.,.), frame components
Matrix4 j_from_omega(const TwoForm& omega);

ComplexStructureData structure_from_omega(const TwoForm& omega);

/// Recover (omega, J) as sqrt(2) times the unit top eigenvector of W+; the
/// top eigenvalue must be simple (gap > gap_tol).  Sign fixed deterministically
/// (largest-magnitude sigma+ component positive).
ComplexStructureData recover_j(const PointCurvature& pc, double gap_tol = 1e-8);

/// <R(omega/2 + phi), omega/2 + psi>
double bisectional(const PointCurvature& pc, const ComplexStructureData& cs,
                   const ComplexLineForm& phi, const ComplexLineForm& psi);

/// Rm(X, JX, Y, JY) for unit X, Y
double bisectional_direct(const PointCurvature& pc, const ComplexStructureData& cs,
                          const Vec4& x, const Vec4& y);

/// | H(X,Y) - K(X,Y) - K(X,JY) |; vanishes for Kaehler metrics only
double kahler_bisec_identity_residual(const PointCurvature& pc, const ComplexStructureData& cs,
                                      const Vec4& x, const Vec4& y);

/// sectional curvature of span{X, Y}, normalized so the round S^4 of radius 1
/// gives 1 for every plane
double sectional(const PointCurvature& pc, const Vec4& x, const Vec4& y);

}  // namespace curv4
