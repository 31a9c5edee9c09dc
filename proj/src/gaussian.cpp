#include "gck/gaussian.hpp"

namespace gck {

size_t rat_rank(RatMatrix m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col].is_zero()) continue;
            Rational factor = m[r][col] / m[rank][col];
            for (size_t k = col; k < cols; ++k) m[r][k] -= factor * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<Rational>> rat_kernel(RatMatrix m, size_t cols) {
    const size_t rows = m.size();
    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        Rational p = m[rank][col];
        for (size_t k = 0; k < cols; ++k) m[rank][k] = m[rank][k] / p;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col].is_zero()) continue;
            Rational factor = m[r][col];
            for (size_t k = 0; k < cols; ++k) m[r][k] -= factor * m[rank][k];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = Rational(1);
        for (size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

RatMatrix rat_inverse(RatMatrix m) {
    const size_t n = m.size();
    RatMatrix inv(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw GckError("rat_inverse: singular matrix");
        std::swap(m[col], m[pivot]);
        std::swap(inv[col], inv[pivot]);
        Rational p = m[col][col];
        for (size_t k = 0; k < n; ++k) {
            m[col][k] = m[col][k] / p;
            inv[col][k] = inv[col][k] / p;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            Rational factor = m[r][col];
            for (size_t k = 0; k < n; ++k) {
                m[r][k] -= factor * m[col][k];
                inv[r][k] -= factor * inv[col][k];
            }
        }
    }
    return inv;
}

std::vector<Rational> rat_mat_vec(const RatMatrix& m, const std::vector<Rational>& v) {
    std::vector<Rational> out(m.size(), Rational(0));
    for (size_t r = 0; r < m.size(); ++r)
        for (size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
    return out;
}

bool rat_in_span(const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& v) {
    RatMatrix rows = basis;
    size_t r0 = rat_rank(rows);
    rows = basis;
    rows.push_back(v);
    return rat_rank(rows) == r0;
}

RatMatrix eval_matrix(const PolyMatrix& m, const std::vector<Rational>& point) {
    RatMatrix out(m.rows(), std::vector<Rational>(m.cols()));
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) out[r][c] = m.at(r, c).eval(point);
    return out;
}

GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    if (b.is_zero()) throw GckError("Gaussian rational: division by zero");
    Rational norm = b.re * b.re + b.im * b.im;
    GaussRat num = a * b.conj();
    return GaussRat(num.re / norm, num.im / norm);
}

size_t gauss_rank(GaussMatrix m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        const GaussRat p = m[rank][col];
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col].is_zero()) continue;
            GaussRat factor = m[r][col] / p;
            for (size_t c = col; c < cols; ++c) m[r][c] = m[r][c] - factor * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

std::vector<GaussRat> gauss_mat_vec(const GaussMatrix& m, const std::vector<GaussRat>& v) {
    std::vector<GaussRat> out(m.size());
    for (size_t r = 0; r < m.size(); ++r) {
        GaussRat s;
        for (size_t c = 0; c < v.size(); ++c) s = s + m[r][c] * v[c];
        out[r] = s;
    }
    return out;
}

}  // namespace gck
