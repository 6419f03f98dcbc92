#include "obliq/trig.hpp"

#include <cmath>
#include <numbers>

namespace obliq {

namespace {
constexpr double kPi = std::numbers::pi;
}

double trig_overlap(const TrigFactor& f, const TrigFactor& g) {
    if (f.kind == TrigFactor::Sin && g.kind == TrigFactor::Sin) {
        return f.k == g.k ? 0.5 : 0.0;
    }
    if (f.kind == TrigFactor::Cos && g.kind == TrigFactor::Cos) {
        if (f.k != g.k) return 0.0;
        return f.k == 0 ? 1.0 : 0.5;
    }
    // Mixed sin/cos.
    const int k = f.kind == TrigFactor::Sin ? f.k : g.k;
    const int m = f.kind == TrigFactor::Sin ? g.k : f.k;
    if (k == m) return 0.0;
    if (((k + m) & 1) == 0) return 0.0;
    const double kk = static_cast<double>(k);
    const double mm = static_cast<double>(m);
    return 2.0 * kk / (kPi * (kk * kk - mm * mm));
}

void TrigTensor::add_term(const TrigKey& key, double coeff) {
    if (coeff == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

TrigTensor& TrigTensor::operator+=(const TrigTensor& other) {
    for (const auto& [key, coeff] : other.terms_) add_term(key, coeff);
    return *this;
}

TrigTensor& TrigTensor::operator-=(const TrigTensor& other) {
    for (const auto& [key, coeff] : other.terms_) add_term(key, -coeff);
    return *this;
}

TrigTensor& TrigTensor::operator*=(double s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, coeff] : terms_) coeff *= s;
    return *this;
}

double TrigTensor::max_abs_coeff() const {
    double best = 0.0;
    for (const auto& [key, coeff] : terms_) {
        best = std::max(best, std::abs(coeff));
    }
    return best;
}

TrigTensor operator+(TrigTensor a, const TrigTensor& b) { return a += b; }
TrigTensor operator-(TrigTensor a, const TrigTensor& b) { return a -= b; }
TrigTensor operator*(double s, TrigTensor t) { return t *= s; }

TrigTensor differentiate(const TrigTensor& t, int axis) {
    TrigTensor out(t.dims());
    for (const auto& [key, coeff] : t.terms()) {
        const TrigFactor& f = key[static_cast<size_t>(axis)];
        if (f.kind == TrigFactor::Cos && f.k == 0) continue;
        TrigKey dkey = key;
        const double scale = static_cast<double>(f.k) * kPi;
        if (f.kind == TrigFactor::Sin) {
            dkey[static_cast<size_t>(axis)] = TrigFactor{TrigFactor::Cos, f.k};
            out.add_term(dkey, coeff * scale);
        } else {
            dkey[static_cast<size_t>(axis)] = TrigFactor{TrigFactor::Sin, f.k};
            out.add_term(dkey, -coeff * scale);
        }
    }
    return out;
}

double l2_inner(const TrigTensor& a, const TrigTensor& b) {
    double total = 0.0;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            double prod = ca * cb;
            for (size_t ax = 0; ax < ka.size() && prod != 0.0; ++ax) {
                prod *= trig_overlap(ka[ax], kb[ax]);
            }
            total += prod;
        }
    }
    return total;
}

TrigField make_field(int dims) {
    TrigField f{dims, {}};
    f.components.assign(static_cast<size_t>(dims), TrigTensor(dims));
    return f;
}

TrigField apply_grad(const TrigTensor& phi) {
    TrigField out = make_field(phi.dims());
    for (int ax = 0; ax < phi.dims(); ++ax) {
        out.components[static_cast<size_t>(ax)] = differentiate(phi, ax);
    }
    return out;
}

TrigTensor apply_div(const TrigField& u) {
    TrigTensor out(u.dims);
    for (size_t c = 0; c < u.components.size(); ++c) {
        out += differentiate(u.components[c], static_cast<int>(c));
    }
    return out;
}

TrigField apply_rot(const TrigField& u) {
    if (u.dims == 2) {
        if (u.components.size() != 2) {
            throw DimensionMismatch("apply_rot: 2D field needs 2 components");
        }
        TrigField out{2, {}};
        out.components.push_back(differentiate(u.components[1], 0) -
                                 differentiate(u.components[0], 1));
        return out;
    }
    if (u.dims == 3) {
        if (u.components.size() != 3) {
            throw DimensionMismatch("apply_rot: 3D field needs 3 components");
        }
        TrigField out{3, {}};
        out.components.push_back(differentiate(u.components[2], 1) -
                                 differentiate(u.components[1], 2));
        out.components.push_back(differentiate(u.components[0], 2) -
                                 differentiate(u.components[2], 0));
        out.components.push_back(differentiate(u.components[1], 0) -
                                 differentiate(u.components[0], 1));
        return out;
    }
    throw DimensionMismatch("apply_rot requires dims in {2, 3}");
}

TrigField apply_component_grad(const TrigField& u) {
    TrigField out{u.dims, {}};
    for (const TrigTensor& comp : u.components) {
        for (int ax = 0; ax < u.dims; ++ax) {
            out.components.push_back(differentiate(comp, ax));
        }
    }
    return out;
}

double l2_inner(const TrigField& a, const TrigField& b) {
    if (a.components.size() != b.components.size()) {
        throw DimensionMismatch("l2_inner: component count mismatch");
    }
    double total = 0.0;
    for (size_t c = 0; c < a.components.size(); ++c) {
        total += l2_inner(a.components[c], b.components[c]);
    }
    return total;
}

double l2_norm_sq(const TrigField& a) { return l2_inner(a, a); }
double l2_norm_sq(const TrigTensor& a) { return l2_inner(a, a); }

TrigField operator+(const TrigField& a, const TrigField& b) {
    if (a.components.size() != b.components.size()) {
        throw DimensionMismatch("field addition: component count mismatch");
    }
    TrigField out = a;
    for (size_t c = 0; c < out.components.size(); ++c) {
        out.components[c] += b.components[c];
    }
    return out;
}

TrigField operator-(const TrigField& a, const TrigField& b) {
    if (a.components.size() != b.components.size()) {
        throw DimensionMismatch("field subtraction: component count mismatch");
    }
    TrigField out = a;
    for (size_t c = 0; c < out.components.size(); ++c) {
        out.components[c] -= b.components[c];
    }
    return out;
}

TrigField operator*(double s, const TrigField& a) {
    TrigField out = a;
    for (auto& comp : out.components) comp *= s;
    return out;
}

double max_abs_coeff(const TrigField& a) {
    double best = 0.0;
    for (const auto& comp : a.components) {
        best = std::max(best, comp.max_abs_coeff());
    }
    return best;
}

} // namespace obliq
