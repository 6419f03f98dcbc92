#pragma once

#include <complex>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "obliq/errors.hpp"

namespace obliq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ColVec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

// Default relative threshold on singular values when computing numerical rank.
inline constexpr double kDefaultRankTol = 1e-10;
// Default threshold on 1 - cos(theta) when detecting intersection directions.
inline constexpr double kDefaultIntersectTol = 1e-8;
// Inclinations within this gap of 1 are treated as degenerate.
inline constexpr double kDegenerateGap = 1e-12;

class HilbertSpace;
using SpacePtr = std::shared_ptr<const HilbertSpace>;

// A finite-dimensional complex coordinate space carrying a Hermitian
// positive-definite metric G. Inner products are (x, y) = y^H G x:
// linear in the first argument, conjugate-linear in the second, so that
// x -> (x, w) is a linear functional with Riesz vector w.
//
// All metric computations route through the cached Cholesky factor R
// (G = R^* R, R upper triangular): in coordinates y = R x the metric is
// Euclidean and every downstream algorithm is a standard one.
class HilbertSpace {
public:
    Eigen::Index dim() const noexcept { return gram_.rows(); }
    const Matrix& gram() const noexcept { return gram_; }
    // Upper-triangular R with G = R^* R.
    const Matrix& gram_factor() const noexcept { return factor_; }
    const std::string& label() const noexcept { return label_; }

    // x -> R x (Cholesky coordinates).
    ColVec to_chol(const ColVec& x) const { return factor_ * x; }
    Matrix to_chol(const Matrix& a) const { return factor_ * a; }
    // Solve R x = y.
    ColVec from_chol(const ColVec& y) const;
    Matrix from_chol(const Matrix& y) const;

private:
    friend SpacePtr make_space(Matrix gram, std::string label);

    HilbertSpace(Matrix gram, Matrix factor, std::string label)
        : gram_(std::move(gram)), factor_(std::move(factor)),
          label_(std::move(label)) {}

    Matrix gram_;
    Matrix factor_;
    std::string label_;
};

// A vector of the ambient coordinate space.
struct Vector {
    SpacePtr space;
    ColVec coeffs;
};

// Validates the metric (Hermitian within 1e-12 relative, Cholesky pivots
// above dim * 1e-14 * max|G|) and caches its Cholesky factor.
// Throws GramNotHermitian / GramNotPositiveDefinite.
SpacePtr make_space(Matrix gram, std::string label = "");

// Euclidean space of the given dimension (G = I).
SpacePtr make_euclidean(Eigen::Index dim, std::string label = "");

Vector make_vector(SpacePtr space, ColVec coeffs);
Vector zero_vector(SpacePtr space);

// (x, y) = y^H G x. Throws DimensionMismatch.
Complex inner(const Vector& x, const Vector& y);
double norm(const Vector& x);

// Metric-orthonormal basis B (B^* G B = I) for the numerical column span of
// `generators`; singular values of R * generators below rank_tol * sigma_max
// are discarded. k = 0 is allowed and yields an empty matrix.
Matrix gram_orthonormalize(const HilbertSpace& space, const Matrix& generators,
                           double rank_tol = kDefaultRankTol);

// ---------------------------------------------------------------------------
// Dense kernels. Backed by Eigen; wrapped here so every caller sees one
// deterministic surface (fixed phase convention, ascending eigenvalues).

struct SvdResult {
    Matrix u;
    RealVec sigma; // descending
    Matrix v;
};

// SVD with a deterministic phase convention: the largest-magnitude entry of
// each left singular vector is made real and positive; the matching right
// vector carries the compensating phase so a = u * diag(sigma) * v^H holds.
SvdResult svd(const Matrix& a, bool full_u = false, bool full_v = false);

// Phase-normalize columns in place (largest-magnitude entry real positive).
void fix_phases(Matrix& basis);

// Hermitian eigensolve; eigenvalues ascending, phase-fixed eigenvectors.
RealVec hermitian_eigs(const Matrix& a, Matrix* vectors = nullptr);

// A x = lambda B x with B Hermitian positive definite; eigenvalues ascending.
RealVec generalized_hermitian_eigs(const Matrix& a, const Matrix& b,
                                   Matrix* vectors = nullptr);

// Minimal-norm least-squares solution of a x = b (SVD-based).
Matrix least_squares(const Matrix& a, const Matrix& b);

} // namespace obliq
