#include "obliq/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace obliq {

namespace {

void require_same_space(const Subspace& a, const Subspace& b,
                        const char* where) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw DimensionMismatch(std::string(where) +
                                ": subspaces of different ambient dimension");
    }
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

} // namespace

Subspace::Subspace(SpacePtr space, Matrix basis)
    : space_(std::move(space)), basis_(std::move(basis)) {
    if (!space_ || basis_.rows() != space_->dim()) {
        throw DimensionMismatch("subspace basis rows do not match space dimension");
    }
    if (basis_.cols() > basis_.rows()) {
        throw DimensionMismatch("subspace dimension exceeds ambient dimension");
    }
    chol_basis_ = space_->to_chol(basis_);
    if (basis_.cols() > 0) {
        const double err =
            (chol_basis_.adjoint() * chol_basis_ -
             Matrix::Identity(basis_.cols(), basis_.cols()))
                .cwiseAbs()
                .maxCoeff();
        if (err > 1e-9) {
            throw Error("BasisNotOrthonormal",
                        "basis fails B^*GB = I by " + std::to_string(err));
        }
    }
}

const char* to_string(Containment c) {
    switch (c) {
        case Containment::L_in_M: return "L_in_M";
        case Containment::M_in_L: return "M_in_L";
        default: return "none";
    }
}

Subspace span(SpacePtr space, const Matrix& generators, double rank_tol) {
    Matrix basis = gram_orthonormalize(*space, generators, rank_tol);
    return Subspace(std::move(space), std::move(basis));
}

Subspace zero_subspace(SpacePtr space) {
    Matrix empty(space->dim(), 0);
    return Subspace(std::move(space), std::move(empty));
}

Subspace full_subspace(SpacePtr space) {
    // R^{-1} I is G-orthonormal.
    const Matrix eye = Matrix::Identity(space->dim(), space->dim());
    Matrix basis = space->from_chol(eye);
    return Subspace(std::move(space), std::move(basis));
}

Vector project(const Subspace& s, const Vector& x) {
    if (x.coeffs.size() != s.ambient_dim()) {
        throw DimensionMismatch("project: vector does not match subspace ambient");
    }
    if (s.dim() == 0) return zero_vector(x.space ? x.space : s.space());
    const ColVec xc = s.space()->to_chol(x.coeffs);
    ColVec p = s.basis() * (s.chol_basis().adjoint() * xc);
    return Vector{s.space(), std::move(p)};
}

Subspace intersect(const Subspace& l, const Subspace& m, double tol) {
    require_same_space(l, m, "intersect");
    if (l.dim() == 0 || m.dim() == 0) return zero_subspace(l.space());

    const Matrix cross = l.chol_basis().adjoint() * m.chol_basis();
    SvdResult dec = svd(cross);
    Eigen::Index k = 0;
    while (k < dec.sigma.size() && dec.sigma(k) > 1.0 - tol) ++k;
    if (k == 0) return zero_subspace(l.space());

    Matrix qbasis = l.basis() * dec.u.leftCols(k);
    return Subspace(l.space(), std::move(qbasis));
}

Subspace ominus(const Subspace& l, const Subspace& q, double tol) {
    require_same_space(l, q, "ominus");
    if (q.dim() == 0) return l;
    if (q.dim() > l.dim()) {
        throw NotASubspaceOf("ominus: Q has larger dimension than L");
    }
    // Containment check: all principal cosines between Q and L equal 1.
    const Matrix cross = q.chol_basis().adjoint() * l.chol_basis();
    SvdResult dec = svd(cross);
    if (dec.sigma.size() < q.dim() || dec.sigma(q.dim() - 1) < 1.0 - tol) {
        throw NotASubspaceOf("ominus: Q is not contained in L at tolerance " +
                             std::to_string(tol));
    }
    const Eigen::Index k = l.dim() - q.dim();
    if (k == 0) return zero_subspace(l.space());

    // Component of L's basis orthogonal to Q; its leading k left singular
    // vectors span L (-) Q.
    const Matrix residual =
        l.chol_basis() -
        q.chol_basis() * (q.chol_basis().adjoint() * l.chol_basis());
    SvdResult rdec = svd(residual);
    Matrix basis = l.space()->from_chol(Matrix(rdec.u.leftCols(k)));
    return Subspace(l.space(), std::move(basis));
}

Subspace sum(const Subspace& l, const Subspace& m, double rank_tol) {
    require_same_space(l, m, "sum");
    Matrix joined(l.ambient_dim(), l.dim() + m.dim());
    joined << l.basis(), m.basis();
    return span(l.space(), joined, rank_tol);
}

Subspace perp(const Subspace& s) {
    if (s.dim() == 0) return full_subspace(s.space());
    if (s.dim() == s.ambient_dim()) return zero_subspace(s.space());
    SvdResult dec = svd(s.chol_basis(), /*full_u=*/true);
    Matrix tail = dec.u.rightCols(s.ambient_dim() - s.dim());
    Matrix basis = s.space()->from_chol(tail);
    return Subspace(s.space(), std::move(basis));
}

InclinationReport inclination(const Subspace& l, const Subspace& m,
                              double tol) {
    require_same_space(l, m, "inclination");
    if (l.dim() == 0 || m.dim() == 0) {
        throw ZeroSubspace("inclination requires nonzero subspaces");
    }

    Subspace q = intersect(l, m, tol);
    Subspace lr = ominus(l, q, tol);
    Subspace mr = ominus(m, q, tol);

    InclinationReport rep{
        0.0,    q.dim(),          {}, std::move(q), std::move(lr),
        std::move(mr), Containment::none, false,
        zero_vector(l.space()),   zero_vector(l.space())};

    if (rep.l_reduced.dim() == 0 || rep.m_reduced.dim() == 0) {
        rep.containment = rep.l_reduced.dim() == 0 ? Containment::L_in_M
                                                   : Containment::M_in_L;
        rep.c = 1.0;
        return rep;
    }

    const Matrix cross =
        rep.l_reduced.chol_basis().adjoint() * rep.m_reduced.chol_basis();
    SvdResult dec = svd(cross);
    rep.c = clamp01(dec.sigma(0));
    rep.angles.resize(dec.sigma.size());
    for (Eigen::Index i = 0; i < dec.sigma.size(); ++i) {
        rep.angles[static_cast<size_t>(i)] = std::acos(clamp01(dec.sigma(i)));
    }
    std::sort(rep.angles.begin(), rep.angles.end());
    rep.u_top.coeffs = rep.l_reduced.basis() * dec.u.col(0);
    rep.v_top.coeffs = rep.m_reduced.basis() * dec.v.col(0);
    rep.near_degenerate = rep.c > 1.0 - kDegenerateGap;
    return rep;
}

double inclination_oracle(const Subspace& l, const Subspace& m, double tol) {
    require_same_space(l, m, "inclination_oracle");
    if (l.dim() == 0 || m.dim() == 0) {
        throw ZeroSubspace("inclination_oracle requires nonzero subspaces");
    }
    Subspace q = intersect(l, m, tol);
    Subspace lr = ominus(l, q, tol);
    Subspace mr = ominus(m, q, tol);
    if (lr.dim() == 0 || mr.dim() == 0) return 1.0;

    const Eigen::Index n = l.ambient_dim();
    const Matrix pl = lr.chol_basis() * lr.chol_basis().adjoint();
    const Matrix pm = mr.chol_basis() * mr.chol_basis().adjoint();
    // ||P_L P_M||^2 = lambda_max(P_M P_L P_M)
    Matrix h = pm * pl * pm;
    h = 0.5 * (h + h.adjoint());
    RealVec evals = hermitian_eigs(h);
    const double top = evals(n - 1);
    return std::min(1.0, std::sqrt(std::max(top, 0.0)));
}

} // namespace obliq
