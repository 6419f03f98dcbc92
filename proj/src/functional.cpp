#include "obliq/functional.hpp"

#include <cmath>

namespace obliq {

Functional make_functional(SpacePtr space, ColVec riesz_coeffs) {
    Vector w = make_vector(space, std::move(riesz_coeffs));
    return Functional{std::move(space), std::move(w)};
}

double restriction_norm(const Functional& f, const Subspace& s) {
    return norm(project(s, f.riesz));
}

bool in_fq(const Functional& f, const Subspace& l, const Subspace& m,
           double tol) {
    Subspace q = intersect(l, m, tol);
    if (q.dim() == 0) return true;
    return restriction_norm(f, q) <= tol * norm(f.riesz);
}

ExtensionReport extend(const Functional& f, const Subspace& l,
                       const Subspace& m, double tol) {
    if (!f.space || f.space->dim() != l.ambient_dim()) {
        throw DimensionMismatch("extend: functional does not match subspaces");
    }
    if (!in_fq(f, l, m, tol)) {
        throw NotInFQ("extend requires f to vanish on L /\\ M");
    }
    InclinationReport rep = inclination(l, m, tol);
    if (rep.containment != Containment::none || rep.near_degenerate ||
        rep.c >= 1.0 - kDegenerateGap) {
        throw DegenerateInclination("extend requires c(L, M) < 1; got c = " +
                                    std::to_string(rep.c));
    }

    const SpacePtr& space = l.space();
    Subspace s = sum(l, m);

    // Canonical L-components of all sum-space basis vectors at once:
    // strip the Q-projection, then solve over the concatenated reduced bases.
    const Matrix bs = s.basis();
    Matrix stripped = bs;
    if (rep.q.dim() > 0) {
        stripped -= rep.q.basis() *
                    (rep.q.chol_basis().adjoint() * s.chol_basis());
    }
    const Eigen::Index kl = rep.l_reduced.dim();
    const Eigen::Index km = rep.m_reduced.dim();
    Matrix a(l.ambient_dim(), kl + km);
    if (kl > 0) a.leftCols(kl) = rep.l_reduced.chol_basis();
    if (km > 0) a.rightCols(km) = rep.m_reduced.chol_basis();
    const Matrix z = least_squares(a, space->to_chol(stripped));
    Matrix xl_hat(l.ambient_dim(), s.dim());
    if (kl > 0) {
        xl_hat = rep.l_reduced.basis() * z.topRows(kl);
    } else {
        xl_hat.setZero();
    }

    // f_tilde(b_j) = (xl_hat_j, w); the Riesz vector of f_tilde lives in
    // L + M with coefficients conj(f_tilde(b_j)) over the sum basis.
    const Eigen::RowVectorXcd vals =
        f.riesz.coeffs.adjoint() * space->gram() * xl_hat;
    ColVec tilde_coeffs = bs * vals.adjoint();
    Functional f_tilde = make_functional(space, std::move(tilde_coeffs));

    ExtensionReport report{f,   f_tilde, restriction_norm(f, l),
                           norm(f_tilde.riesz), rep.c,
                           0.0, 0.0,     0.0};
    report.bound = report.norm_f_l / std::sqrt(1.0 - rep.c * rep.c);

    // Consistency over the subspace bases: f_tilde = f on L, = 0 on M.
    const Matrix gw = space->gram() * f.riesz.coeffs;
    const Matrix gt = space->gram() * f_tilde.riesz.coeffs;
    for (Eigen::Index j = 0; j < l.dim(); ++j) {
        const Complex fv = (gw.adjoint() * l.basis().col(j))(0);
        const Complex tv = (gt.adjoint() * l.basis().col(j))(0);
        report.on_l_error = std::max(report.on_l_error, std::abs(tv - fv));
    }
    for (Eigen::Index j = 0; j < m.dim(); ++j) {
        const Complex tv = (gt.adjoint() * m.basis().col(j))(0);
        report.on_m_error = std::max(report.on_m_error, std::abs(tv));
    }
    return report;
}

ProbeTable degeneracy_probe(const SubspaceFamily& family, int steps,
                            double tol) {
    ProbeTable table;
    for (int t = 1; t <= steps; ++t) {
        auto [l, m] = family(t);
        try {
            InclinationReport rep = inclination(l, m, tol);
            if (rep.containment != Containment::none || rep.near_degenerate) {
                table.completed = false;
                break;
            }
            Functional f{l.space(), rep.u_top};
            ExtensionReport ext = extend(f, l, m, tol);
            Vector gap{l.space(), rep.u_top.coeffs - rep.v_top.coeffs};
            table.rows.push_back(ProbeRow{static_cast<double>(t), rep.c,
                                          ext.bound, ext.norm_f_tilde,
                                          norm(gap)});
        } catch (const DegenerateInclination&) {
            table.completed = false;
            break;
        }
    }
    return table;
}

} // namespace obliq
