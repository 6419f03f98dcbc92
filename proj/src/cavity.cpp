#include "obliq/cavity.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <random>

namespace obliq {

namespace {

constexpr double kPi = std::numbers::pi;

struct BasisEntry {
    int component;
    TrigKey key;
};

void validate(const CavityConfig& config) {
    if (config.d != 2 && config.d != 3) {
        throw DimensionMismatch("cavity dimension must be 2 or 3, got " +
                                std::to_string(config.d));
    }
    if (config.n_modes < 1) {
        throw ConfigTooLarge("n_modes must be positive, got " +
                             std::to_string(config.n_modes));
    }
    const int cap = config.d == 2 ? 6 : 3;
    if (config.n_modes > cap) {
        throw ConfigTooLarge("n_modes " + std::to_string(config.n_modes) +
                             " exceeds the documented cap " +
                             std::to_string(cap) + " for d = " +
                             std::to_string(config.d));
    }
}

// All tuples in {1..n}^length, row-major (last position fastest).
std::vector<std::vector<int>> sine_tuples(int length, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> current(static_cast<size_t>(length), 1);
    if (length == 0) {
        out.push_back({});
        return out;
    }
    while (true) {
        out.push_back(current);
        int pos = length - 1;
        while (pos >= 0) {
            if (++current[static_cast<size_t>(pos)] <= n) break;
            current[static_cast<size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

TrigField basis_field(int d, const BasisEntry& entry) {
    TrigField f = make_field(d);
    f.components[static_cast<size_t>(entry.component)].add_term(entry.key, 1.0);
    return f;
}

double membership_residual(const CavityModel& model, const RealVec& coords,
                           const Subspace& s) {
    Vector x{model.ambient, coords.cast<Complex>()};
    Vector p = project(s, x);
    Vector diff{model.ambient, x.coeffs - p.coeffs};
    return norm(diff);
}

} // namespace

CavityModel build_cavity(const CavityConfig& config, int threads) {
    validate(config);
    const int d = config.d;
    const int n = config.n_modes;

    // Enumerate the ambient basis: component-major, own-axis sines before
    // cosines, off-axis sine indices row-major.
    std::vector<BasisEntry> entries;
    std::map<std::pair<int, TrigKey>, Eigen::Index> index_of;
    const auto offs = sine_tuples(d - 1, n);
    std::vector<bool> own_is_sin;
    for (int j = 0; j < d; ++j) {
        std::vector<TrigFactor> own;
        for (int k = 1; k <= n; ++k) own.push_back({TrigFactor::Sin, k});
        for (int k = 0; k <= n; ++k) own.push_back({TrigFactor::Cos, k});
        for (const TrigFactor& f : own) {
            for (const auto& off : offs) {
                TrigKey key(static_cast<size_t>(d));
                size_t oi = 0;
                for (int ax = 0; ax < d; ++ax) {
                    if (ax == j) {
                        key[static_cast<size_t>(ax)] = f;
                    } else {
                        key[static_cast<size_t>(ax)] =
                            TrigFactor{TrigFactor::Sin, off[oi++]};
                    }
                }
                index_of[{j, key}] = static_cast<Eigen::Index>(entries.size());
                entries.push_back(BasisEntry{j, key});
                own_is_sin.push_back(f.kind == TrigFactor::Sin);
            }
        }
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(entries.size());

    CavityModel model;
    model.config = config;
    model.basis_fields.reserve(static_cast<size_t>(dim));
    for (const auto& entry : entries) {
        model.basis_fields.push_back(basis_field(d, entry));
    }

    // Derived fields per basis element; Gram entries are then exact sums of
    // 1D overlap products.
    std::vector<TrigField> rots, divs, grads;
    rots.reserve(static_cast<size_t>(dim));
    divs.reserve(static_cast<size_t>(dim));
    grads.reserve(static_cast<size_t>(dim));
    for (const auto& field : model.basis_fields) {
        rots.push_back(apply_rot(field));
        TrigField div_as_field{d, {apply_div(field)}};
        divs.push_back(std::move(div_as_field));
        grads.push_back(apply_component_grad(field));
    }

    model.mass_gram.resize(dim, dim);
    model.rot_gram.resize(dim, dim);
    model.div_gram.resize(dim, dim);
    model.grad_gram.resize(dim, dim);

    auto fill_rows = [&](Eigen::Index row_begin, Eigen::Index row_end) {
        for (Eigen::Index i = row_begin; i < row_end; ++i) {
            for (Eigen::Index j = i; j < dim; ++j) {
                const auto si = static_cast<size_t>(i);
                const auto sj = static_cast<size_t>(j);
                model.mass_gram(i, j) =
                    l2_inner(model.basis_fields[si], model.basis_fields[sj]);
                model.rot_gram(i, j) = l2_inner(rots[si], rots[sj]);
                model.div_gram(i, j) = l2_inner(divs[si], divs[sj]);
                model.grad_gram(i, j) = l2_inner(grads[si], grads[sj]);
            }
        }
    };
    if (threads > 1) {
        std::vector<std::future<void>> jobs;
        const Eigen::Index chunk = (dim + threads - 1) / threads;
        for (Eigen::Index begin = 0; begin < dim; begin += chunk) {
            const Eigen::Index end = std::min(begin + chunk, dim);
            jobs.push_back(std::async(std::launch::async, fill_rows, begin, end));
        }
        for (auto& job : jobs) job.get();
    } else {
        fill_rows(0, dim);
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            model.mass_gram(i, j) = model.mass_gram(j, i);
            model.rot_gram(i, j) = model.rot_gram(j, i);
            model.div_gram(i, j) = model.div_gram(j, i);
            model.grad_gram(i, j) = model.grad_gram(j, i);
        }
    }
    model.mass_llt.compute(model.mass_gram);
    if (model.mass_llt.info() != Eigen::Success) {
        throw GramNotPositiveDefinite("cavity mass form is not positive definite");
    }

    const Eigen::MatrixXd g =
        model.rot_gram + model.div_gram + model.mass_gram;
    model.ambient = make_space(g.cast<Complex>(),
                               "cavity(d=" + std::to_string(d) +
                                   ",N=" + std::to_string(n) + ")");

    // L: coordinate directions whose own-axis factor is a sine.
    Eigen::Index l_count = 0;
    for (bool s : own_is_sin) l_count += s ? 1 : 0;
    Matrix lgen = Matrix::Zero(dim, l_count);
    {
        Eigen::Index col = 0;
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (own_is_sin[static_cast<size_t>(i)]) lgen(i, col++) = 1.0;
        }
    }

    // Scalar sine modes and their gradients; gradient coordinates follow
    // exactly from the basis index map.
    const auto modes = sine_tuples(d, n); // row-major
    Matrix mgen = Matrix::Zero(dim, static_cast<Eigen::Index>(modes.size()));
    Eigen::Index mcol = 0;
    for (const auto& ks : modes) {
        TrigKey skey;
        for (int ax = 0; ax < d; ++ax) {
            skey.push_back(TrigFactor{TrigFactor::Sin, ks[static_cast<size_t>(ax)]});
        }
        TrigTensor mode(d);
        mode.add_term(skey, 1.0);
        model.scalar_modes.push_back(std::move(mode));
        for (int j = 0; j < d; ++j) {
            TrigKey gkey = skey;
            gkey[static_cast<size_t>(j)] =
                TrigFactor{TrigFactor::Cos, ks[static_cast<size_t>(j)]};
            const double coeff = ks[static_cast<size_t>(j)] * kPi;
            mgen(index_of.at({j, gkey}), mcol) = coeff;
        }
        ++mcol;
    }

    model.l_sub = span(model.ambient, lgen);
    model.m_sub = span(model.ambient, mgen);
    model.q_lm = intersect(model.l_sub, model.m_sub);
    model.l_hat = ominus(model.l_sub, model.q_lm);
    model.c = inclination(model.l_sub, model.m_sub).c;
    return model;
}

RealVec to_coords(const CavityModel& model, const TrigField& u, double tol) {
    if (u.dims != model.config.d ||
        u.components.size() != static_cast<size_t>(model.config.d)) {
        throw DimensionMismatch("to_coords: field dimension mismatch");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(model.basis_fields.size());
    Eigen::VectorXd rhs(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        rhs(i) = l2_inner(model.basis_fields[static_cast<size_t>(i)], u);
    }
    RealVec coords = model.mass_llt.solve(rhs);

    TrigField recon = from_coords(model, coords);
    const double err = std::sqrt(l2_norm_sq(recon - u));
    const double scale = std::sqrt(l2_norm_sq(u));
    if (err > tol * std::max(scale, 1e-300)) {
        throw NotInSumSpace("field is not in the ambient spectral span "
                            "(residual " +
                            std::to_string(err) + ")");
    }
    return coords;
}

TrigField from_coords(const CavityModel& model, const RealVec& coords) {
    if (coords.size() != static_cast<Eigen::Index>(model.basis_fields.size())) {
        throw DimensionMismatch("from_coords: coordinate length mismatch");
    }
    TrigField out = make_field(model.config.d);
    for (Eigen::Index i = 0; i < coords.size(); ++i) {
        if (coords(i) == 0.0) continue;
        const TrigField& b = model.basis_fields[static_cast<size_t>(i)];
        for (size_t c = 0; c < out.components.size(); ++c) {
            TrigTensor scaled = b.components[c];
            scaled *= coords(i);
            out.components[c] += scaled;
        }
    }
    return out;
}

FieldDecomposition decompose_field(const CavityModel& model,
                                   const TrigField& u, double a1, double tol) {
    const RealVec coords = to_coords(model, u, tol);
    Vector x{model.ambient, coords.cast<Complex>()};
    Decomposition parts = decompose(model.l_hat, model.m_sub, x, a1, tol);
    FieldDecomposition out{from_coords(model, parts.xm.coeffs.real()),
                           from_coords(model, parts.xl.coeffs.real()),
                           std::move(parts)};
    return out;
}

double identity_check(const CavityModel& model, const TrigField& u) {
    if (u.dims != model.config.d ||
        u.components.size() != static_cast<size_t>(model.config.d)) {
        throw DimensionMismatch("identity_check: field dimension mismatch");
    }
    // Split off any non-sine content; tolerate only rounding-level weight so
    // that orthonormalized L members pass while genuine cos modes fail.
    TrigField sin_part = make_field(model.config.d);
    double stray_sq = 0.0;
    for (size_t c = 0; c < u.components.size(); ++c) {
        for (const auto& [key, coeff] : u.components[c].terms()) {
            bool all_sin = true;
            for (const auto& factor : key) {
                if (factor.kind != TrigFactor::Sin) {
                    all_sin = false;
                    break;
                }
            }
            if (all_sin) {
                sin_part.components[c].add_term(key, coeff);
            } else {
                TrigTensor stray(model.config.d);
                stray.add_term(key, coeff);
                stray_sq += l2_norm_sq(stray);
            }
        }
    }
    const double total = std::sqrt(l2_norm_sq(u));
    if (std::sqrt(stray_sq) > kDefaultIntersectTol * std::max(total, 1e-300)) {
        throw NotInL("identity_check requires an all-sin field");
    }
    const double q_rot = l2_norm_sq(apply_rot(sin_part));
    const double q_div = l2_norm_sq(apply_div(sin_part));
    const double q_grad = l2_norm_sq(apply_component_grad(sin_part));
    return q_grad - q_rot - q_div;
}

double contraction_check_coords(const CavityModel& model,
                                const RealVec& coords) {
    const double membership = membership_residual(model, coords, model.l_hat);
    Vector x{model.ambient, coords.cast<Complex>()};
    const double xnorm = norm(x);
    if (membership > kDefaultIntersectTol * std::max(xnorm, 1e-300)) {
        throw NotInLHat("field is not in the vortex subspace (residual " +
                        std::to_string(membership) + ")");
    }
    Vector p = project(model.m_sub, x);
    const double pnorm = norm(p);
    return model.c * model.c * xnorm * xnorm - pnorm * pnorm;
}

double contraction_check(const CavityModel& model, const TrigField& u) {
    return contraction_check_coords(model, to_coords(model, u));
}

KornResult korn_measure(const CavityModel& model) {
    if (model.l_hat.dim() == 0) {
        throw ZeroSubspace("korn_measure requires a nonzero vortex subspace");
    }
    const Matrix& basis = model.l_hat.basis();
    Matrix a_r = basis.adjoint() * model.ambient->gram() * basis;
    Matrix b_r = basis.adjoint() *
                 (model.rot_gram + model.mass_gram).cast<Complex>() * basis;
    a_r = 0.5 * (a_r + a_r.adjoint());
    b_r = 0.5 * (b_r + b_r.adjoint());

    Matrix vectors;
    RealVec evals = generalized_hermitian_eigs(a_r, b_r, &vectors);
    const Eigen::Index top = evals.size() - 1;

    KornResult result;
    result.kappa = evals(top);
    result.bound = 1.0 / (1.0 - model.c * model.c);
    result.margin = result.bound - result.kappa;
    ColVec z = basis * vectors.col(top);
    result.argmax_coords = z.real();
    const double znorm = result.argmax_coords.norm();
    if (znorm > 0) result.argmax_coords /= znorm;
    result.argmax = from_coords(model, result.argmax_coords);
    return result;
}

double rayleigh_kappa(const CavityModel& model, int restarts,
                      std::uint64_t seed) {
    const Matrix& basis = model.l_hat.basis();
    const Eigen::Index k = basis.cols();
    Matrix a_c = basis.adjoint() * model.ambient->gram() * basis;
    Matrix b_c = basis.adjoint() *
                 (model.rot_gram + model.mass_gram).cast<Complex>() * basis;
    // The restricted forms are real symmetric (real bases, real grams).
    Eigen::MatrixXd a = a_c.real();
    Eigen::MatrixXd b = b_c.real();
    a = 0.5 * (a + a.transpose());
    b = 0.5 * (b + b.transpose());
    Eigen::LLT<Eigen::MatrixXd> b_llt(b);
    if (b_llt.info() != Eigen::Success) {
        throw GramNotPositiveDefinite("korn right-hand form is not PD");
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = 0.0;
    for (int r = 0; r < restarts; ++r) {
        Eigen::VectorXd z(k);
        for (Eigen::Index i = 0; i < k; ++i) z(i) = gauss(rng);
        z.normalize();
        double quotient = 0.0;
        for (int iter = 0; iter < 20000; ++iter) {
            // Power step on B^{-1} A: monotone in the Rayleigh quotient of
            // the pencil (A, B).
            Eigen::VectorXd next = b_llt.solve(a * z);
            const double nn = next.norm();
            if (nn == 0.0) break;
            next /= nn;
            const double q =
                next.dot(a * next) / next.dot(b * next);
            z = next;
            if (iter > 0 && std::abs(q - quotient) <= 1e-13 * std::abs(q)) {
                quotient = q;
                break;
            }
            quotient = q;
        }
        best = std::max(best, quotient);
    }
    return best;
}

DivProbeResult div_orthogonality_probe(const CavityModel& model,
                                       const TrigField& u) {
    const RealVec coords = to_coords(model, u);
    const double membership = membership_residual(model, coords, model.l_hat);
    Vector x{model.ambient, coords.cast<Complex>()};
    if (membership > kDefaultIntersectTol * std::max(norm(x), 1e-300)) {
        throw NotInLHat("field is not in the vortex subspace");
    }
    Vector p = project(model.m_sub, x);
    RealVec residual_coords = (x.coeffs - p.coeffs).real();
    TrigField u_prime = from_coords(model, residual_coords);
    TrigTensor div_u = apply_div(u_prime);

    DivProbeResult out;
    out.div_norm = std::sqrt(l2_norm_sq(div_u));
    for (const auto& mode : model.scalar_modes) {
        const double overlap = std::abs(l2_inner(div_u, mode)) /
                               std::sqrt(l2_norm_sq(mode));
        out.max_sine_overlap = std::max(out.max_sine_overlap, overlap);
    }
    return out;
}

} // namespace obliq
