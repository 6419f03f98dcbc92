#pragma once

#include "obliq/subspace.hpp"

namespace obliq {

// The split x = y_hat + xl_hat + xm_hat (canonical, weight-independent) and
// the final components xl = xl_hat + a1 * y_hat in L, xm = xm_hat + a2 * y_hat
// in M, with the certified constants A_k = a_k + 1 / sqrt(1 - c^2).
struct Decomposition {
    Vector x;
    Vector y_hat;  // projection onto Q = L /\ M
    Vector xl_hat; // component in L (-) Q
    Vector xm_hat; // component in M (-) Q
    Vector xl;
    Vector xm;
    double a1 = 0.5;
    double a2 = 0.5;
    double c = 0.0;
    double A1 = 0.0;
    double A2 = 0.0;
    double residual = 0.0; // |x - xl - xm|
};

struct BoundsReport {
    double x_norm = 0.0;
    // slack = bound - value; every slack must be >= -1e-8 * |x|.
    double y_hat_slack = 0.0;  // |x| - |y_hat|
    double xl_hat_slack = 0.0; // |x| / sqrt(1-c^2) - |xl_hat|
    double xm_hat_slack = 0.0;
    double xl_slack = 0.0; // A1 |x| - |xl|
    double xm_slack = 0.0;
    double residual = 0.0;
    bool ok = false;
};

// Splits x in L + M with certified constants. a1 in [0, 1] weighs the
// Q-component between the two parts (a2 = 1 - a1). The canonical triple
// (y_hat, xl_hat, xm_hat) does not depend on a1.
//
// Throws BadWeights (a1 outside [0, 1]), DegenerateInclination (containment,
// near-degenerate, or c >= 1 - 1e-12), NotInSumSpace (least-squares residual
// exceeds tol * |x|). Pass a precomputed report to skip recomputing c.
Decomposition decompose(const Subspace& l, const Subspace& m, const Vector& x,
                        double a1 = 0.5, double tol = kDefaultIntersectTol,
                        const InclinationReport* report = nullptr);

// Checks the component bounds |y_hat| <= |x|, |xl_hat|, |xm_hat| <=
// |x| / sqrt(1-c^2) and |xl| <= A1 |x|, |xm| <= A2 |x|.
BoundsReport verify_bounds(const Decomposition& d);

// True iff (L + M)-perp = {0}; otherwise reports the defect dimension.
struct SumDenseReport {
    bool dense = false;
    Eigen::Index defect = 0;
};

SumDenseReport sum_dense_check(const Subspace& l, const Subspace& m,
                               double rank_tol = kDefaultRankTol);

} // namespace obliq
