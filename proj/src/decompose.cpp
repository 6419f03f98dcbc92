#include "obliq/decompose.hpp"

#include <cmath>

namespace obliq {

Decomposition decompose(const Subspace& l, const Subspace& m, const Vector& x,
                        double a1, double tol,
                        const InclinationReport* report) {
    if (x.coeffs.size() != l.ambient_dim()) {
        throw DimensionMismatch("decompose: vector does not match subspaces");
    }
    if (!(a1 >= 0.0 && a1 <= 1.0)) {
        throw BadWeights("a1 must lie in [0, 1], got " + std::to_string(a1));
    }

    InclinationReport local = report ? *report : inclination(l, m, tol);
    if (local.containment != Containment::none || local.near_degenerate ||
        local.c >= 1.0 - kDegenerateGap) {
        throw DegenerateInclination(
            "decompose requires c(L, M) < 1; got c = " + std::to_string(local.c) +
            ", containment = " + to_string(local.containment));
    }

    const SpacePtr& space = l.space();
    Vector y_hat = project(local.q, x);

    // Least squares over the concatenated reduced bases in Cholesky
    // coordinates; unique because c < 1 keeps the columns independent.
    const Eigen::Index kl = local.l_reduced.dim();
    const Eigen::Index km = local.m_reduced.dim();
    Matrix a(l.ambient_dim(), kl + km);
    if (kl > 0) a.leftCols(kl) = local.l_reduced.chol_basis();
    if (km > 0) a.rightCols(km) = local.m_reduced.chol_basis();
    const ColVec rhs = space->to_chol(ColVec(x.coeffs - y_hat.coeffs));
    const Matrix z = least_squares(a, rhs);

    Vector xl_hat = zero_vector(space);
    Vector xm_hat = zero_vector(space);
    if (kl > 0) xl_hat.coeffs = local.l_reduced.basis() * z.topRows(kl);
    if (km > 0) xm_hat.coeffs = local.m_reduced.basis() * z.bottomRows(km);

    const double a2 = 1.0 - a1;
    Vector xl{space, xl_hat.coeffs + a1 * y_hat.coeffs};
    Vector xm{space, xm_hat.coeffs + a2 * y_hat.coeffs};

    Vector diff{space, x.coeffs - xl.coeffs - xm.coeffs};
    const double residual = norm(diff);
    const double xnorm = norm(x);
    if (residual > tol * xnorm) {
        throw NotInSumSpace("decompose: x is outside L + M (residual " +
                            std::to_string(residual) + " > " +
                            std::to_string(tol) + " * |x|)");
    }

    const double amp = 1.0 / std::sqrt(1.0 - local.c * local.c);
    Decomposition d{x,
                    std::move(y_hat),
                    std::move(xl_hat),
                    std::move(xm_hat),
                    std::move(xl),
                    std::move(xm),
                    a1,
                    a2,
                    local.c,
                    a1 + amp,
                    a2 + amp,
                    residual};
    return d;
}

BoundsReport verify_bounds(const Decomposition& d) {
    BoundsReport r;
    r.x_norm = norm(d.x);
    const double amp = 1.0 / std::sqrt(1.0 - d.c * d.c);
    r.y_hat_slack = r.x_norm - norm(d.y_hat);
    r.xl_hat_slack = amp * r.x_norm - norm(d.xl_hat);
    r.xm_hat_slack = amp * r.x_norm - norm(d.xm_hat);
    r.xl_slack = d.A1 * r.x_norm - norm(d.xl);
    r.xm_slack = d.A2 * r.x_norm - norm(d.xm);
    r.residual = d.residual;
    const double floor = -1e-8 * r.x_norm;
    r.ok = r.y_hat_slack >= floor && r.xl_hat_slack >= floor &&
           r.xm_hat_slack >= floor && r.xl_slack >= floor &&
           r.xm_slack >= floor;
    return r;
}

SumDenseReport sum_dense_check(const Subspace& l, const Subspace& m,
                               double rank_tol) {
    Subspace s = sum(l, m, rank_tol);
    const Eigen::Index defect = s.ambient_dim() - s.dim();
    return SumDenseReport{defect == 0, defect};
}

} // namespace obliq
