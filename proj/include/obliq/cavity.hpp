#pragma once

#include <cstdint>
#include <map>

#include <Eigen/Cholesky>

#include "obliq/decompose.hpp"
#include "obliq/trig.hpp"

namespace obliq {

struct CavityConfig {
    int d = 2;        // spatial dimension, 2 or 3
    int n_modes = 1;  // per-axis mode cutoff N
    int korn_samples = 200;
};

// Spectral model of tangential-trace-free fields on the unit box. Ambient
// coordinates enumerate tensor-product modes: component j carries sin factors
// on every off axis and sin(k) (k = 1..N) or cos(k) (k = 0..N) on its own
// axis, so the boundary condition holds identically. The metric is the
// resonator energy form G = rot_gram + div_gram + mass_gram.
//
// L is the all-sin (zero-trace) subspace, M the gradients of the all-sin
// scalar span, L_hat = L (-) (L /\ M) the vortex fields.
struct CavityModel {
    CavityConfig config;
    SpacePtr ambient;
    std::vector<TrigField> basis_fields;
    std::vector<TrigTensor> scalar_modes; // all-sin potentials, lexicographic
    Subspace l_sub;
    Subspace m_sub;
    Subspace q_lm;
    Subspace l_hat;
    double c = 0.0; // inclination of (L, M)
    Eigen::MatrixXd mass_gram, rot_gram, div_gram, grad_gram;
    Eigen::LLT<Eigen::MatrixXd> mass_llt;
};

// Throws ConfigTooLarge beyond the documented caps (N <= 6 in 2D, N <= 3 in
// 3D). Gram assembly may be parallelized over basis rows with `threads` > 1.
CavityModel build_cavity(const CavityConfig& config, int threads = 1);

// Expansion of a field over the ambient basis; throws NotInSumSpace when the
// reconstruction misses u by more than tol relative (L2).
RealVec to_coords(const CavityModel& model, const TrigField& u,
                  double tol = kDefaultIntersectTol);

TrigField from_coords(const CavityModel& model, const RealVec& coords);

struct FieldDecomposition {
    TrigField potential; // component in M
    TrigField vortex;    // component in L_hat
    Decomposition parts;
};

// u = potential + vortex over (L_hat, M); unique since L_hat /\ M = {0}.
FieldDecomposition decompose_field(const CavityModel& model,
                                   const TrigField& u, double a1 = 0.5,
                                   double tol = kDefaultIntersectTol);

// |grad u|^2 - |rot u|^2 - |div u|^2 over the box for an all-sin field;
// exact up to rounding. Throws NotInL when some factor is not a sine.
double identity_check(const CavityModel& model, const TrigField& u);

// Slack c^2 |u|^2 - |P_M u|^2 (energy norms) for u in L_hat; nonnegative up
// to rounding by the contraction property. Throws NotInLHat.
double contraction_check(const CavityModel& model, const TrigField& u);
double contraction_check_coords(const CavityModel& model,
                                const RealVec& coords);

struct KornResult {
    double kappa = 0.0;  // largest eigenvalue of G vs rot+mass on L_hat
    double bound = 0.0;  // 1 / (1 - c^2)
    double margin = 0.0; // bound - kappa
    RealVec argmax_coords;
    TrigField argmax;
};

KornResult korn_measure(const CavityModel& model);

// Independent check on kappa: random-restart Rayleigh-quotient maximization
// of the same pencil (power iterations through the Cholesky solve of the
// right-hand form).
double rayleigh_kappa(const CavityModel& model, int restarts = 20,
                      std::uint64_t seed = 0x6b6f726e);

struct DivProbeResult {
    double div_norm = 0.0;         // |div u'|_{L2}, u' = u - P_M u
    double max_sine_overlap = 0.0; // largest normalized overlap with the
                                   // all-sin scalar span
};

DivProbeResult div_orthogonality_probe(const CavityModel& model,
                                       const TrigField& u);

} // namespace obliq
