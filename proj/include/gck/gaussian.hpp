// Exact pointwise linear algebra: rational matrices (ranks, kernels,
// inverses) and Gaussian-rational arithmetic over Q(i) for the eigenspace
// check. No numerical thresholds exist anywhere.
#pragma once

#include <vector>

#include "gck/tensor.hpp"

namespace gck {

using RatMatrix = std::vector<std::vector<Rational>>;

size_t rat_rank(RatMatrix m);
// Basis of the kernel of an (m x cols) matrix.
std::vector<std::vector<Rational>> rat_kernel(RatMatrix m, size_t cols);
RatMatrix rat_inverse(RatMatrix m);  // throws on a singular matrix
std::vector<Rational> rat_mat_vec(const RatMatrix& m, const std::vector<Rational>& v);
bool rat_in_span(const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& v);
RatMatrix eval_matrix(const PolyMatrix& m, const std::vector<Rational>& point);

struct GaussRat {
    Rational re, im;

    GaussRat() = default;
    GaussRat(Rational r) : re(std::move(r)) {}
    GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    static GaussRat i() { return GaussRat(Rational(0), Rational(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    GaussRat conj() const { return GaussRat(re, -im); }
    GaussRat operator-() const { return GaussRat(-re, -im); }
    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re + b.re, a.im + b.im);
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re - b.re, a.im - b.im);
    }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b);
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
};

using GaussMatrix = std::vector<std::vector<GaussRat>>;

size_t gauss_rank(GaussMatrix m);
std::vector<GaussRat> gauss_mat_vec(const GaussMatrix& m, const std::vector<GaussRat>& v);

}  // namespace gck
