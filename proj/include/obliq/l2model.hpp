#pragma once

#include <utility>

#include "obliq/subspace.hpp"

namespace obliq {

// Truncated l2 fixture with N coordinate pairs: L keeps even-indexed
// coordinates zero, M couples each pair through w_{2n} = w_{2n-1} * theta_{2n}.
// Everything about the pair (inclination, decomposition, extension) has a
// closed form, used to cross-validate the generic engine.
struct L2ModelConfig {
    Eigen::Index n_pairs = 1;
    RealVec thetas; // theta_2, theta_4, ..., theta_{2N}; all nonzero
};

struct L2Model {
    L2ModelConfig config;
    SpacePtr space; // Euclidean, dimension 2N
    Subspace l;
    Subspace m;
};

// Throws BadTheta on a zero/non-finite entry or a length mismatch.
void validate(const L2ModelConfig& config);

L2Model build_l2(const L2ModelConfig& config);

// c = 1 / sqrt(1 + theta), theta = min theta_{2n}^2.
double analytic_inclination(const L2ModelConfig& config);

// u = v + w with v_{2n-1} = u_{2n-1} - u_{2n}/theta_{2n}, v_{2n} = 0,
// w_{2n-1} = u_{2n}/theta_{2n}, w_{2n} = u_{2n}. Exact, v in L, w in M.
std::pair<Vector, Vector> analytic_decompose(const L2ModelConfig& config,
                                             const Vector& u);

// Riesz vector (a_1, 0, a_3, 0, ...) in L of the functional with odd-index
// values a; feeds the functional module.
Vector embed_riesz(const L2ModelConfig& config, const RealVec& a);

// The closed-form extension vanishing on M:
// a_tilde_{2n-1} = a_{2n-1}, a_tilde_{2n} = -a_{2n-1} / theta_{2n}.
Vector analytic_extend(const L2ModelConfig& config, const RealVec& a);

// theta_{2n} = 1/n truncated at n_pairs, the degenerating family.
L2ModelConfig one_over_n_config(Eigen::Index n_pairs);

} // namespace obliq
