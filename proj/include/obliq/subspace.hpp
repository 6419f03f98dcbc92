#pragma once

#include <vector>

#include "obliq/hilbert.hpp"

namespace obliq {

// A linear subspace held as a metric-orthonormal basis (basis^* G basis = I).
// k = 0 (the zero subspace) is a valid state. A default-constructed Subspace
// is an unbound placeholder; bind one before use.
class Subspace {
public:
    Subspace() = default;
    Subspace(SpacePtr space, Matrix basis);

    const SpacePtr& space() const noexcept { return space_; }
    const Matrix& basis() const noexcept { return basis_; }
    // R * basis: Euclidean-orthonormal coordinates, cached for the kernels.
    const Matrix& chol_basis() const noexcept { return chol_basis_; }
    Eigen::Index dim() const noexcept { return basis_.cols(); }
    Eigen::Index ambient_dim() const noexcept { return basis_.rows(); }

private:
    SpacePtr space_;
    Matrix basis_;
    Matrix chol_basis_;
};

enum class Containment { none, L_in_M, M_in_L };

const char* to_string(Containment c);

// Everything inclination() learns about a pair (L, M): the intersection Q,
// the reduced complements, the full principal-angle spectrum between them,
// and a witness pair attaining the top cosine.
struct InclinationReport {
    double c = 0.0;
    Eigen::Index q_dim = 0;
    std::vector<double> angles; // radians, ascending, between L(-)Q and M(-)Q
    Subspace q;
    Subspace l_reduced;
    Subspace m_reduced;
    Containment containment = Containment::none;
    bool near_degenerate = false; // c within 1e-12 of 1 without containment
    // Top principal pair (unit vectors in L(-)Q and M(-)Q); empty coeffs when
    // a containment collapses the reduced pair.
    Vector u_top;
    Vector v_top;
};

// Metric-orthonormal span of the generator columns.
Subspace span(SpacePtr space, const Matrix& generators,
              double rank_tol = kDefaultRankTol);

Subspace zero_subspace(SpacePtr space);
Subspace full_subspace(SpacePtr space);

// Orthogonal projection P_S x. x - project(S, x) is G-orthogonal to S.
Vector project(const Subspace& s, const Vector& x);

// Intersection Q: principal directions of (L, M) whose cosines exceed
// 1 - tol.
Subspace intersect(const Subspace& l, const Subspace& m,
                   double tol = kDefaultIntersectTol);

// L (-) Q, the complement of Q inside L. Throws NotASubspaceOf unless every
// principal cosine between Q and L equals 1 within tol.
Subspace ominus(const Subspace& l, const Subspace& q,
                double tol = kDefaultIntersectTol);

Subspace sum(const Subspace& l, const Subspace& m,
             double rank_tol = kDefaultRankTol);

// G-orthogonal complement in the ambient space.
Subspace perp(const Subspace& s);

// The inclination c(L, M): sup of |(u, v)| / (|u| |v|) over nonzero
// u in L(-)Q, v in M(-)Q, Q = L /\ M. Containment (one reduced part empty)
// reports c = 1 with the containment flag set instead of an error.
// Throws ZeroSubspace when dim L = 0 or dim M = 0.
InclinationReport inclination(const Subspace& l, const Subspace& m,
                              double tol = kDefaultIntersectTol);

// Independent route: the operator G-norm of P_{L(-)Q} P_{M(-)Q}, square-rooted
// from the largest eigenvalue of the Hermitian product in Cholesky
// coordinates. Agrees with inclination() to 1e-9.
double inclination_oracle(const Subspace& l, const Subspace& m,
                          double tol = kDefaultIntersectTol);

} // namespace obliq
