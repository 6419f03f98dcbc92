#include "obliq/l2model.hpp"

#include <cmath>

namespace obliq {

void validate(const L2ModelConfig& config) {
    if (config.n_pairs < 1) {
        throw BadTheta("n_pairs must be positive, got " +
                       std::to_string(config.n_pairs));
    }
    if (config.thetas.size() != config.n_pairs) {
        throw BadTheta("expected " + std::to_string(config.n_pairs) +
                       " theta values, got " +
                       std::to_string(config.thetas.size()));
    }
    for (Eigen::Index n = 0; n < config.thetas.size(); ++n) {
        const double t = config.thetas(n);
        if (t == 0.0 || !std::isfinite(t)) {
            throw BadTheta("theta_" + std::to_string(2 * (n + 1)) +
                           " must be nonzero and finite");
        }
    }
}

L2Model build_l2(const L2ModelConfig& config) {
    validate(config);
    const Eigen::Index n = config.n_pairs;
    SpacePtr space = make_euclidean(2 * n, "l2(" + std::to_string(n) + ")");

    Matrix lgen = Matrix::Zero(2 * n, n);
    Matrix mgen = Matrix::Zero(2 * n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        lgen(2 * i, i) = 1.0;
        mgen(2 * i, i) = 1.0;
        mgen(2 * i + 1, i) = config.thetas(i);
    }
    Subspace l = span(space, lgen);
    Subspace m = span(space, mgen);
    return L2Model{config, std::move(space), std::move(l), std::move(m)};
}

double analytic_inclination(const L2ModelConfig& config) {
    validate(config);
    const double theta = config.thetas.cwiseAbs2().minCoeff();
    return 1.0 / std::sqrt(1.0 + theta);
}

std::pair<Vector, Vector> analytic_decompose(const L2ModelConfig& config,
                                             const Vector& u) {
    validate(config);
    const Eigen::Index n = config.n_pairs;
    if (u.coeffs.size() != 2 * n) {
        throw DimensionMismatch("analytic_decompose: expected dimension " +
                                std::to_string(2 * n));
    }
    ColVec v = ColVec::Zero(2 * n);
    ColVec w = ColVec::Zero(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double theta = config.thetas(i);
        v(2 * i) = u.coeffs(2 * i) - u.coeffs(2 * i + 1) / theta;
        w(2 * i) = u.coeffs(2 * i + 1) / theta;
        w(2 * i + 1) = u.coeffs(2 * i + 1);
    }
    return {Vector{u.space, std::move(v)}, Vector{u.space, std::move(w)}};
}

Vector embed_riesz(const L2ModelConfig& config, const RealVec& a) {
    validate(config);
    const Eigen::Index n = config.n_pairs;
    if (a.size() != n) {
        throw DimensionMismatch("embed_riesz: expected " + std::to_string(n) +
                                " values");
    }
    ColVec w = ColVec::Zero(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) w(2 * i) = a(i);
    return Vector{make_euclidean(2 * n), std::move(w)};
}

Vector analytic_extend(const L2ModelConfig& config, const RealVec& a) {
    validate(config);
    const Eigen::Index n = config.n_pairs;
    if (a.size() != n) {
        throw DimensionMismatch("analytic_extend: expected " +
                                std::to_string(n) + " values");
    }
    ColVec tilde = ColVec::Zero(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        tilde(2 * i) = a(i);
        tilde(2 * i + 1) = -a(i) / config.thetas(i);
    }
    return Vector{make_euclidean(2 * n), std::move(tilde)};
}

L2ModelConfig one_over_n_config(Eigen::Index n_pairs) {
    L2ModelConfig config{n_pairs, RealVec(n_pairs)};
    for (Eigen::Index i = 0; i < n_pairs; ++i) {
        config.thetas(i) = 1.0 / static_cast<double>(i + 1);
    }
    return config;
}

} // namespace obliq
