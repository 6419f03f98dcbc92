#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "obliq/errors.hpp"

namespace obliq {

// One 1D mode factor on (0, 1): sin(k pi x) with k >= 1 or cos(k pi x) with
// k >= 0 (cos(0) is the constant 1).
struct TrigFactor {
    enum Kind : std::uint8_t { Sin, Cos };
    Kind kind = Sin;
    int k = 1;

    friend bool operator==(const TrigFactor& a, const TrigFactor& b) {
        return a.kind == b.kind && a.k == b.k;
    }
    friend bool operator<(const TrigFactor& a, const TrigFactor& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.k < b.k;
    }
};

// Exact value of the 1D overlap integral of two factors on (0, 1).
double trig_overlap(const TrigFactor& f, const TrigFactor& g);

using TrigKey = std::vector<TrigFactor>; // one factor per axis

// A scalar trigonometric polynomial on the unit box: a sum of tensor-product
// terms with real coefficients. Zero-coefficient terms are never retained.
class TrigTensor {
public:
    explicit TrigTensor(int dims = 0) : dims_(dims) {}

    int dims() const noexcept { return dims_; }
    const std::map<TrigKey, double>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    void add_term(const TrigKey& key, double coeff);
    TrigTensor& operator+=(const TrigTensor& other);
    TrigTensor& operator-=(const TrigTensor& other);
    TrigTensor& operator*=(double s);

    double max_abs_coeff() const;

private:
    int dims_;
    std::map<TrigKey, double> terms_;
};

TrigTensor operator+(TrigTensor a, const TrigTensor& b);
TrigTensor operator-(TrigTensor a, const TrigTensor& b);
TrigTensor operator*(double s, TrigTensor t);

// Exact d/dx_axis: sin(k pi x) -> k pi cos(k pi x),
// cos(k pi x) -> -k pi sin(k pi x), constants vanish.
TrigTensor differentiate(const TrigTensor& t, int axis);

// Exact L2(box) inner product: sum over term pairs of products of 1D
// overlaps.
double l2_inner(const TrigTensor& a, const TrigTensor& b);

// A vector field with trig-polynomial components. `components.size()` equals
// the spatial dimension for ambient fields, but derived quantities (the 2D
// rotor, divergences, gradients) reuse the container with other counts.
struct TrigField {
    int dims = 0;
    std::vector<TrigTensor> components;
};

TrigField make_field(int dims);

TrigField apply_grad(const TrigTensor& phi);
TrigTensor apply_div(const TrigField& u);
// d = 3: the usual rotor (3 components); d = 2: the scalar rotor
// d1 u2 - d2 u1 as a single-component field.
TrigField apply_rot(const TrigField& u);

// Componentwise gradient matrix, flattened: d*d tensors d_a u_c.
TrigField apply_component_grad(const TrigField& u);

double l2_inner(const TrigField& a, const TrigField& b);
double l2_norm_sq(const TrigField& a);
double l2_norm_sq(const TrigTensor& a);

TrigField operator+(const TrigField& a, const TrigField& b);
TrigField operator-(const TrigField& a, const TrigField& b);
TrigField operator*(double s, const TrigField& a);

double max_abs_coeff(const TrigField& a);

} // namespace obliq
