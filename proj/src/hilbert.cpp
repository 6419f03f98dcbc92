#include "obliq/hilbert.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace obliq {

ColVec HilbertSpace::from_chol(const ColVec& y) const {
    return factor_.triangularView<Eigen::Upper>().solve(y);
}

Matrix HilbertSpace::from_chol(const Matrix& y) const {
    return factor_.triangularView<Eigen::Upper>().solve(y);
}

SpacePtr make_space(Matrix gram, std::string label) {
    if (gram.rows() == 0 || gram.rows() != gram.cols()) {
        throw GramNotPositiveDefinite("gram matrix must be square and nonempty, got " +
                                      std::to_string(gram.rows()) + "x" +
                                      std::to_string(gram.cols()));
    }
    const double scale = gram.cwiseAbs().maxCoeff();
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw GramNotPositiveDefinite("gram matrix is zero or non-finite");
    }
    const double asym = (gram - gram.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) {
        throw GramNotHermitian("gram matrix deviates from Hermitian by " +
                               std::to_string(asym));
    }
    // Symmetrize so the stored metric is exactly Hermitian.
    Matrix g = 0.5 * (gram + gram.adjoint());

    Eigen::LLT<Matrix> llt(g);
    if (llt.info() != Eigen::Success) {
        throw GramNotPositiveDefinite("Cholesky factorization failed");
    }
    Matrix lower = llt.matrixL();
    const double pivot_floor =
        static_cast<double>(g.rows()) * 1e-14 * scale;
    for (Eigen::Index i = 0; i < lower.rows(); ++i) {
        const double pivot = std::norm(lower(i, i));
        if (!(pivot > pivot_floor)) {
            throw GramNotPositiveDefinite(
                "Cholesky pivot " + std::to_string(pivot) + " at index " +
                std::to_string(i) + " below threshold " +
                std::to_string(pivot_floor));
        }
    }
    Matrix factor = lower.adjoint(); // upper triangular, G = R^* R
    return SpacePtr(new HilbertSpace(std::move(g), std::move(factor),
                                     std::move(label)));
}

SpacePtr make_euclidean(Eigen::Index dim, std::string label) {
    return make_space(Matrix::Identity(dim, dim), std::move(label));
}

Vector make_vector(SpacePtr space, ColVec coeffs) {
    if (!space || coeffs.size() != space->dim()) {
        throw DimensionMismatch("vector length " + std::to_string(coeffs.size()) +
                                " does not match space dimension");
    }
    return Vector{std::move(space), std::move(coeffs)};
}

Vector zero_vector(SpacePtr space) {
    ColVec z = ColVec::Zero(space->dim());
    return Vector{std::move(space), std::move(z)};
}

Complex inner(const Vector& x, const Vector& y) {
    if (!x.space || !y.space || x.space->dim() != y.space->dim() ||
        x.coeffs.size() != y.coeffs.size()) {
        throw DimensionMismatch("inner product of vectors from different spaces");
    }
    // (x, y) = y^H G x
    return y.coeffs.dot(x.space->gram() * x.coeffs);
}

double norm(const Vector& x) {
    const double sq = std::real(inner(x, x));
    return std::sqrt(std::max(sq, 0.0));
}

void fix_phases(Matrix& basis) {
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
        Eigen::Index imax = 0;
        double best = 0.0;
        for (Eigen::Index i = 0; i < basis.rows(); ++i) {
            const double a = std::abs(basis(i, j));
            if (a > best) {
                best = a;
                imax = i;
            }
        }
        if (best == 0.0) continue;
        const Complex phase = basis(imax, j) / best;
        basis.col(j) *= std::conj(phase);
    }
}

SvdResult svd(const Matrix& a, bool full_u, bool full_v) {
    const unsigned options = (full_u ? Eigen::ComputeFullU : Eigen::ComputeThinU) |
                             (full_v ? Eigen::ComputeFullV : Eigen::ComputeThinV);
    Eigen::JacobiSVD<Matrix> dec(a, options);
    SvdResult r{dec.matrixU(), dec.singularValues(), dec.matrixV()};
    // Phase convention on left vectors; compensate on the right so that
    // a == u * diag(sigma) * v^H is preserved.
    const Eigen::Index pairs = std::min(r.u.cols(), r.v.cols());
    for (Eigen::Index j = 0; j < pairs; ++j) {
        Eigen::Index imax = 0;
        double best = 0.0;
        for (Eigen::Index i = 0; i < r.u.rows(); ++i) {
            const double m = std::abs(r.u(i, j));
            if (m > best) {
                best = m;
                imax = i;
            }
        }
        if (best == 0.0) continue;
        const Complex phase = r.u(imax, j) / best;
        r.u.col(j) *= std::conj(phase);
        r.v.col(j) *= std::conj(phase);
    }
    // Trailing columns (full decompositions) only need determinism.
    if (r.u.cols() > pairs) {
        Matrix tail = r.u.rightCols(r.u.cols() - pairs);
        fix_phases(tail);
        r.u.rightCols(tail.cols()) = tail;
    }
    if (r.v.cols() > pairs) {
        Matrix tail = r.v.rightCols(r.v.cols() - pairs);
        fix_phases(tail);
        r.v.rightCols(tail.cols()) = tail;
    }
    return r;
}

RealVec hermitian_eigs(const Matrix& a, Matrix* vectors) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        a, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw Error("EigensolveFailed", "Hermitian eigensolve did not converge");
    }
    if (vectors) {
        *vectors = es.eigenvectors();
        fix_phases(*vectors);
    }
    return es.eigenvalues();
}

RealVec generalized_hermitian_eigs(const Matrix& a, const Matrix& b,
                                   Matrix* vectors) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(
        a, b,
        vectors ? (Eigen::ComputeEigenvectors | Eigen::Ax_lBx)
                : (Eigen::EigenvaluesOnly | Eigen::Ax_lBx));
    if (es.info() != Eigen::Success) {
        throw Error("EigensolveFailed",
                    "generalized Hermitian eigensolve did not converge");
    }
    if (vectors) {
        *vectors = es.eigenvectors();
        fix_phases(*vectors);
    }
    return es.eigenvalues();
}

Matrix least_squares(const Matrix& a, const Matrix& b) {
    Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return dec.solve(b);
}

Matrix gram_orthonormalize(const HilbertSpace& space, const Matrix& generators,
                           double rank_tol) {
    if (generators.rows() != space.dim()) {
        throw DimensionMismatch("generator rows " +
                                std::to_string(generators.rows()) +
                                " do not match space dimension " +
                                std::to_string(space.dim()));
    }
    if (generators.cols() == 0) return Matrix(space.dim(), 0);

    const Matrix y = space.to_chol(generators);
    SvdResult dec = svd(y);
    const double smax = dec.sigma.size() > 0 ? dec.sigma(0) : 0.0;
    if (smax <= 0.0) return Matrix(space.dim(), 0);

    Eigen::Index k = 0;
    while (k < dec.sigma.size() && dec.sigma(k) >= rank_tol * smax) ++k;
    if (k == 0) return Matrix(space.dim(), 0);

    return space.from_chol(Matrix(dec.u.leftCols(k)));
}

} // namespace obliq
