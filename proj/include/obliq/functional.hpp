#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "obliq/decompose.hpp"

namespace obliq {

// A continuous functional represented by its Riesz vector: f(x) = (x, w).
// For a functional "given on L" only the L-component of w is meaningful.
struct Functional {
    SpacePtr space;
    Vector riesz;
};

Functional make_functional(SpacePtr space, ColVec riesz_coeffs);

// |f restricted to S| = |P_S w|, the sup of |f(x)|/|x| over S.
double restriction_norm(const Functional& f, const Subspace& s);

// True iff f vanishes on Q = L /\ M: |P_Q w| <= tol * |w|. Vacuously true
// when Q = {0}.
bool in_fq(const Functional& f, const Subspace& l, const Subspace& m,
           double tol = kDefaultIntersectTol);

struct ExtensionReport {
    Functional f;       // the input functional
    Functional f_tilde; // the extension: = f on L, = 0 on M, 0 on (L+M)-perp
    double norm_f_l = 0.0;     // |f|_{L*}
    double norm_f_tilde = 0.0; // |f_tilde| on the ambient space
    double c = 0.0;
    double bound = 0.0; // norm_f_l / sqrt(1 - c^2)
    double on_l_error = 0.0; // max |f_tilde(b) - f(b)| over L's basis
    double on_m_error = 0.0; // max |f_tilde(b)| over M's basis
};

// Norm-bounded extension: evaluates f on the canonical L-component of the
// split over L + M and extends by zero on the complement.
// Throws NotInFQ, DegenerateInclination.
ExtensionReport extend(const Functional& f, const Subspace& l,
                       const Subspace& m, double tol = kDefaultIntersectTol);

// One step of a degenerating family study: the extension of the functional
// carried by the top principal vector of (L_t, M_t).
struct ProbeRow {
    double t = 0.0;
    double c = 0.0;
    double bound = 0.0;         // 1 / sqrt(1 - c^2), unit-norm functional
    double attained_norm = 0.0; // |f_tilde|
    double pair_gap = 0.0;      // |u_t - v_t| of the principal pair
};

struct ProbeTable {
    std::vector<ProbeRow> rows;
    bool completed = true; // false when a step degenerated and aborted
};

using SubspaceFamily = std::function<std::pair<Subspace, Subspace>(int step)>;

// Walks family(1..steps); each step extends f_t(x) = (x, u_t) for the top
// principal vector u_t and records the attained norm. A DegenerateInclination
// at any step aborts with the partial table.
ProbeTable degeneracy_probe(const SubspaceFamily& family, int steps,
                            double tol = kDefaultIntersectTol);

} // namespace obliq
