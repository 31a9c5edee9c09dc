#include "gck/tensor.hpp"

#include <algorithm>
#include <unordered_map>

namespace gck {

Chart::Chart(VarList names) : coords(std::move(names)) {
    for (size_t i = 0; i < coords.size(); ++i)
        for (size_t j = i + 1; j < coords.size(); ++j)
            if (coords[i] == coords[j])
                throw GckError("chart: duplicate coordinate '" + coords[i] + "'");
    vars = make_vars(coords);
}

static void require_same_chart(const Chart& a, const Chart& b, const char* op) {
    if (!(a == b)) throw GckError(std::string(op) + ": chart mismatch");
}

// ----------------------------------------------------------- combinations

size_t comb_count(size_t n, size_t k) {
    if (k > n) return 0;
    size_t r = 1;
    for (size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

size_t comb_rank(std::span<const size_t> tuple, size_t n) {
    // Lexicographic rank of a strictly increasing tuple.
    size_t k = tuple.size(), rank = 0, prev = 0;
    for (size_t pos = 0; pos < k; ++pos) {
        for (size_t v = prev; v < tuple[pos]; ++v) rank += comb_count(n - v - 1, k - pos - 1);
        prev = tuple[pos] + 1;
    }
    return rank;
}

std::vector<size_t> comb_unrank(size_t rank, size_t n, size_t k) {
    std::vector<size_t> t(k);
    size_t v = 0;
    for (size_t pos = 0; pos < k; ++pos) {
        while (true) {
            size_t block = comb_count(n - v - 1, k - pos - 1);
            if (rank < block) break;
            rank -= block;
            ++v;
        }
        t[pos] = v++;
    }
    return t;
}

// Sorts an index tuple, returning the permutation sign; 0 for repeats.
static int sort_sign(std::vector<size_t>& idx) {
    int sign = 1;
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) {
                std::swap(idx[i], idx[j]);
                sign = -sign;
            }
        }
    return sign;
}

// ------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(size_t rows, size_t cols, const RatPoly& fill)
    : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

PolyMatrix PolyMatrix::identity(size_t n, const VarListPtr& vars) {
    PolyMatrix m(n, n, RatPoly::zero(vars));
    for (size_t i = 0; i < n; ++i) m.at(i, i) = RatPoly::constant(vars, Rational(1));
    return m;
}

PolyMatrix PolyMatrix::zero(size_t rows, size_t cols, const VarListPtr& vars) {
    return PolyMatrix(rows, cols, RatPoly::zero(vars));
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix m(cols_, rows_, RatPoly());
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const RatPoly& p) { return p.is_zero(); });
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw GckError("matrix: shape mismatch");
    PolyMatrix r = a;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
    return r;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw GckError("matrix: shape mismatch");
    PolyMatrix r = a;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
    return r;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw GckError("matrix: shape mismatch in product");
    PolyMatrix r(a.rows_, b.cols_, RatPoly());
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t j = 0; j < b.cols_; ++j) {
            RatPoly s;
            bool first = true;
            for (size_t k = 0; k < a.cols_; ++k) {
                const RatPoly& x = a.at(i, k);
                const RatPoly& y = b.at(k, j);
                if (x.is_zero() || y.is_zero()) continue;
                if (first) {
                    s = x * y;
                    first = false;
                } else {
                    s += x * y;
                }
            }
            if (first) s = RatPoly::zero(a.a_.empty() ? b.a_.front().vars_ptr() : a.a_.front().vars_ptr());
            r.at(i, j) = std::move(s);
        }
    return r;
}

PolyMatrix PolyMatrix::operator-() const {
    PolyMatrix r = *this;
    for (auto& p : r.a_) p = -p;
    return r;
}

PolyMatrix PolyMatrix::scaled(const Rational& c) const {
    PolyMatrix r = *this;
    for (auto& p : r.a_) p = p.scaled(c);
    return r;
}

std::vector<RatPoly> PolyMatrix::apply(std::span<const RatPoly> v) const {
    if (v.size() != cols_) throw GckError("matrix: vector length mismatch");
    std::vector<RatPoly> out;
    out.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) {
        RatPoly s = a_.empty() ? RatPoly() : RatPoly::zero(a_.front().vars_ptr());
        for (size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero() || v[k].is_zero()) continue;
            s += at(i, k) * v[k];
        }
        out.push_back(std::move(s));
    }
    return out;
}

RatPoly PolyMatrix::determinant() const {
    if (rows_ != cols_) throw GckError("determinant: not square");
    const size_t n = rows_;
    const VarListPtr vars = a_.empty() ? make_vars({}) : a_.front().vars_ptr();
    if (n == 0) return RatPoly::constant(vars, Rational(1));
    std::unordered_map<uint32_t, RatPoly> memo;
    std::function<const RatPoly&(uint32_t)> det = [&](uint32_t mask) -> const RatPoly& {
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        size_t r = static_cast<size_t>(__builtin_popcount(mask));
        RatPoly result = RatPoly::zero(vars);
        if (r == 0) {
            result = RatPoly::constant(vars, Rational(1));
        } else {
            // Laplace expansion along row r-1 over the columns in the mask;
            // the leading sign is (-1)^{(r-1)+k} for the k-th masked column.
            int sign = (r - 1) % 2 == 0 ? 1 : -1;
            for (size_t j = 0; j < n; ++j) {
                if (!(mask & (1u << j))) continue;
                const RatPoly& entry = at(r - 1, j);
                if (!entry.is_zero()) {
                    const RatPoly& sub = det(mask & ~(1u << j));
                    RatPoly term = entry * sub;
                    result += sign > 0 ? term : -term;
                }
                sign = -sign;
            }
        }
        return memo.emplace(mask, std::move(result)).first->second;
    };
    return det(n == 32 ? 0xffffffffu : ((1u << n) - 1u));
}

void PolyMatrix::det_adjugate(RatPoly& det, PolyMatrix& adj) const {
    if (rows_ != cols_) throw GckError("adjugate: not square");
    const size_t n = rows_;
    const VarListPtr vars = a_.empty() ? make_vars({}) : a_.front().vars_ptr();
    if (n == 0) {
        det = RatPoly::constant(vars, Rational(1));
        adj = PolyMatrix::zero(0, 0, vars);
        return;
    }
    PolyMatrix M = PolyMatrix::identity(n, vars);
    RatPoly c = RatPoly::zero(vars);
    PolyMatrix last = M;
    for (size_t k = 1; k <= n; ++k) {
        PolyMatrix AM = (*this) * M;
        RatPoly trace = RatPoly::zero(vars);
        for (size_t i = 0; i < n; ++i) trace += AM.at(i, i);
        c = trace.scaled(Rational(-1, static_cast<long long>(k)));
        if (k < n) {
            M = AM;
            for (size_t i = 0; i < n; ++i) M.at(i, i) += c;
            last = M;
        }
    }
    det = (n % 2 == 0) ? c : -c;
    adj = (n % 2 == 1) ? last : -last;
}

PolyMatrix PolyMatrix::substitute(const std::map<std::string, RatPoly>& images,
                                  VarListPtr target_vars) const {
    PolyMatrix r(rows_, cols_, RatPoly::zero(target_vars));
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].substitute(images, target_vars);
    return r;
}

// ------------------------------------------------------------ VectorField

VectorField::VectorField(Chart c, std::vector<RatPoly> v) : chart(std::move(c)), comps(std::move(v)) {
    if (comps.size() != chart.dim()) throw GckError("vector field: component count mismatch");
}

VectorField VectorField::zero(const Chart& c) {
    return VectorField(c, std::vector<RatPoly>(c.dim(), c.zero()));
}

VectorField VectorField::basis(const Chart& c, size_t i) {
    VectorField X = zero(c);
    X.comps.at(i) = c.constant(Rational(1));
    return X;
}

bool VectorField::is_zero() const {
    return std::all_of(comps.begin(), comps.end(), [](const RatPoly& p) { return p.is_zero(); });
}

bool VectorField::operator==(const VectorField& o) const {
    return chart == o.chart && comps == o.comps;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    require_same_chart(a.chart, b.chart, "vector sum");
    VectorField r = a;
    for (size_t i = 0; i < r.comps.size(); ++i) r.comps[i] += b.comps[i];
    return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    require_same_chart(a.chart, b.chart, "vector difference");
    VectorField r = a;
    for (size_t i = 0; i < r.comps.size(); ++i) r.comps[i] -= b.comps[i];
    return r;
}

VectorField VectorField::scaled_by(const RatPoly& f) const {
    VectorField r = *this;
    for (auto& p : r.comps) p *= f;
    return r;
}

// Directional derivative of a scalar.
static RatPoly vf_scalar(const VectorField& X, const RatPoly& f) {
    RatPoly s = X.chart.zero();
    for (size_t i = 0; i < X.chart.dim(); ++i) {
        if (X.comps[i].is_zero()) continue;
        s += X.comps[i] * f.partial(X.chart.coords[i]);
    }
    return s;
}

// ------------------------------------------------------------------ KForm

KForm::KForm(Chart c, size_t k) : chart(std::move(c)), degree(k) {
    if (degree > 4) throw GckError("k-form: degree capped at 4");
    comps.assign(comb_count(chart.dim(), degree), chart.zero());
}

KForm::KForm(Chart c, size_t k, std::vector<RatPoly> v) : KForm(std::move(c), k) {
    if (v.size() != comps.size()) throw GckError("k-form: component count mismatch");
    comps = std::move(v);
}

KForm KForm::zero(const Chart& c, size_t k) { return KForm(c, k); }

KForm KForm::coordinate(const Chart& c, std::span<const size_t> idx) {
    std::vector<size_t> sorted(idx.begin(), idx.end());
    int sign = sort_sign(sorted);
    KForm f(c, idx.size());
    if (sign != 0) f.set_component(sorted, c.constant(Rational(sign)));
    return f;
}

const RatPoly& KForm::component(std::span<const size_t> idx) const {
    return comps.at(comb_rank(idx, chart.dim()));
}

void KForm::set_component(std::span<const size_t> idx, RatPoly p) {
    comps.at(comb_rank(idx, chart.dim())) = std::move(p);
}

RatPoly KForm::component_signed(std::span<const size_t> idx) const {
    std::vector<size_t> sorted(idx.begin(), idx.end());
    int sign = sort_sign(sorted);
    if (sign == 0) return chart.zero();
    const RatPoly& p = component(sorted);
    return sign > 0 ? p : -p;
}

bool KForm::is_zero() const {
    return std::all_of(comps.begin(), comps.end(), [](const RatPoly& p) { return p.is_zero(); });
}

bool KForm::operator==(const KForm& o) const {
    return chart == o.chart && degree == o.degree && comps == o.comps;
}

KForm operator+(const KForm& a, const KForm& b) {
    require_same_chart(a.chart, b.chart, "form sum");
    if (a.degree != b.degree) throw GckError("form sum: degree mismatch");
    KForm r = a;
    for (size_t i = 0; i < r.comps.size(); ++i) r.comps[i] += b.comps[i];
    return r;
}

KForm operator-(const KForm& a, const KForm& b) { return a + (-b); }

KForm KForm::operator-() const {
    KForm r = *this;
    for (auto& p : r.comps) p = -p;
    return r;
}

KForm KForm::scaled_by(const RatPoly& f) const {
    KForm r = *this;
    for (auto& p : r.comps) p *= f;
    return r;
}

RatPoly KForm::apply(std::span<const VectorField> args) const {
    if (args.size() != degree) throw GckError("form apply: arity mismatch");
    for (const auto& X : args) require_same_chart(chart, X.chart, "form apply");
    if (degree == 0) return comps.at(0);
    RatPoly total = chart.zero();
    const size_t n = chart.dim();
    for (size_t rank = 0; rank < comps.size(); ++rank) {
        if (comps[rank].is_zero()) continue;
        auto idx = comb_unrank(rank, n, degree);
        // det of the k x k matrix arg_m^{idx_l}
        RatPoly det = chart.zero();
        std::vector<size_t> perm(degree);
        for (size_t i = 0; i < degree; ++i) perm[i] = i;
        do {
            int sign = 1;
            for (size_t i = 0; i < degree; ++i)
                for (size_t j = i + 1; j < degree; ++j)
                    if (perm[i] > perm[j]) sign = -sign;
            RatPoly prod = chart.constant(Rational(1));
            bool zero = false;
            for (size_t l = 0; l < degree; ++l) {
                const RatPoly& entry = args[perm[l]].comps[idx[l]];
                if (entry.is_zero()) {
                    zero = true;
                    break;
                }
                prod *= entry;
            }
            if (!zero) det += sign > 0 ? prod : -prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        total += comps[rank] * det;
    }
    return total;
}

// --------------------------------------------------------------- Bivector

Bivector::Bivector(Chart c) : chart(std::move(c)) {
    comps.assign(comb_count(chart.dim(), 2), chart.zero());
}

Bivector::Bivector(Chart c, std::vector<RatPoly> v) : Bivector(std::move(c)) {
    if (v.size() != comps.size()) throw GckError("bivector: component count mismatch");
    comps = std::move(v);
}

Bivector Bivector::zero(const Chart& c) { return Bivector(c); }

const RatPoly& Bivector::component(size_t i, size_t j) const {
    std::array<size_t, 2> idx{i, j};
    return comps.at(comb_rank(idx, chart.dim()));
}

void Bivector::set_component(size_t i, size_t j, RatPoly p) {
    std::array<size_t, 2> idx{i, j};
    comps.at(comb_rank(idx, chart.dim())) = std::move(p);
}

RatPoly Bivector::component_signed(size_t i, size_t j) const {
    if (i == j) return chart.zero();
    if (i < j) return component(i, j);
    return -component(j, i);
}

bool Bivector::is_zero() const {
    return std::all_of(comps.begin(), comps.end(), [](const RatPoly& p) { return p.is_zero(); });
}

bool Bivector::operator==(const Bivector& o) const {
    return chart == o.chart && comps == o.comps;
}

Bivector operator+(const Bivector& a, const Bivector& b) {
    require_same_chart(a.chart, b.chart, "bivector sum");
    Bivector r = a;
    for (size_t i = 0; i < r.comps.size(); ++i) r.comps[i] += b.comps[i];
    return r;
}

Bivector Bivector::operator-() const {
    Bivector r = *this;
    for (auto& p : r.comps) p = -p;
    return r;
}

RatPoly Bivector::apply(const KForm& alpha, const KForm& beta) const {
    require_same_chart(chart, alpha.chart, "bivector apply");
    require_same_chart(chart, beta.chart, "bivector apply");
    if (alpha.degree != 1 || beta.degree != 1) throw GckError("bivector apply: needs 1-forms");
    RatPoly total = chart.zero();
    const size_t n = chart.dim();
    for (size_t rank = 0; rank < comps.size(); ++rank) {
        if (comps[rank].is_zero()) continue;
        auto idx = comb_unrank(rank, n, 2);
        total += comps[rank] * (alpha.comps[idx[0]] * beta.comps[idx[1]] -
                                alpha.comps[idx[1]] * beta.comps[idx[0]]);
    }
    return total;
}

// -------------------------------------------------------------- EndoField

EndoField::EndoField(Chart c, PolyMatrix mat) : chart(std::move(c)), m(std::move(mat)) {
    if (m.rows() != chart.dim() || m.cols() != chart.dim())
        throw GckError("endomorphism: matrix shape mismatch");
}

EndoField EndoField::zero(const Chart& c) {
    return EndoField(c, PolyMatrix::zero(c.dim(), c.dim(), c.vars));
}

EndoField EndoField::identity(const Chart& c) {
    return EndoField(c, PolyMatrix::identity(c.dim(), c.vars));
}

EndoField EndoField::scalar(const Chart& c, const RatPoly& f) {
    PolyMatrix m = PolyMatrix::zero(c.dim(), c.dim(), c.vars);
    for (size_t i = 0; i < c.dim(); ++i) m.at(i, i) = f;
    return EndoField(c, std::move(m));
}

VectorField EndoField::apply(const VectorField& X) const {
    require_same_chart(chart, X.chart, "endo apply");
    return VectorField(chart, m.apply(X.comps));
}

KForm EndoField::coapply(const KForm& xi) const {
    require_same_chart(chart, xi.chart, "endo coapply");
    if (xi.degree != 1) throw GckError("endo coapply: needs a 1-form");
    return KForm(chart, 1, m.transpose().apply(xi.comps));
}

bool EndoField::operator==(const EndoField& o) const { return chart == o.chart && m == o.m; }

EndoField operator+(const EndoField& a, const EndoField& b) {
    require_same_chart(a.chart, b.chart, "endo sum");
    return EndoField(a.chart, a.m + b.m);
}

EndoField operator-(const EndoField& a, const EndoField& b) {
    require_same_chart(a.chart, b.chart, "endo difference");
    return EndoField(a.chart, a.m - b.m);
}

EndoField operator*(const EndoField& a, const EndoField& b) {
    require_same_chart(a.chart, b.chart, "endo composition");
    return EndoField(a.chart, a.m * b.m);
}

EndoField EndoField::operator-() const { return EndoField(chart, -m); }

// ---------------------------------------------------------------- PolyMap

PolyMap::PolyMap(Chart src, Chart dst, std::vector<RatPoly> v)
    : source(std::move(src)), target(std::move(dst)), comps(std::move(v)) {
    if (comps.size() != target.dim()) throw GckError("map: component count mismatch");
}

PolyMap PolyMap::identity(const Chart& c) {
    std::vector<RatPoly> v;
    for (size_t i = 0; i < c.dim(); ++i) v.push_back(c.coordinate(i));
    return PolyMap(c, c, std::move(v));
}

PolyMatrix PolyMap::jacobian() const {
    PolyMatrix j(target.dim(), source.dim(), source.zero());
    for (size_t t = 0; t < target.dim(); ++t)
        for (size_t s = 0; s < source.dim(); ++s) j.at(t, s) = comps[t].partial(source.coords[s]);
    return j;
}

std::map<std::string, RatPoly> PolyMap::images() const {
    std::map<std::string, RatPoly> im;
    for (size_t t = 0; t < target.dim(); ++t) im.emplace(target.coords[t], comps[t]);
    return im;
}

RatPoly PolyMap::pull_scalar(const RatPoly& f) const {
    return f.substitute(images(), source.vars);
}

std::vector<Rational> PolyMap::apply_point(const std::vector<Rational>& p) const {
    std::vector<Rational> out;
    out.reserve(comps.size());
    for (const auto& c : comps) out.push_back(c.eval(p));
    return out;
}

PolyMap compose(const PolyMap& g, const PolyMap& f) {
    require_same_chart(g.source, f.target, "map composition");
    std::vector<RatPoly> v;
    for (const auto& c : g.comps) v.push_back(f.pull_scalar(c));
    return PolyMap(f.source, g.target, std::move(v));
}

// --------------------------------------------------------- core operators

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    require_same_chart(X.chart, Y.chart, "lie bracket");
    const Chart& c = X.chart;
    VectorField r = VectorField::zero(c);
    for (size_t i = 0; i < c.dim(); ++i) {
        RatPoly s = c.zero();
        for (size_t j = 0; j < c.dim(); ++j) {
            if (!X.comps[j].is_zero()) s += X.comps[j] * Y.comps[i].partial(c.coords[j]);
            if (!Y.comps[j].is_zero()) s -= Y.comps[j] * X.comps[i].partial(c.coords[j]);
        }
        r.comps[i] = std::move(s);
    }
    return r;
}

KForm exterior_d(const KForm& alpha) {
    const Chart& c = alpha.chart;
    const size_t n = c.dim(), k = alpha.degree;
    if (k >= n || k >= 4) return KForm::zero(c, std::min<size_t>(k + 1, 4));
    KForm d(c, k + 1);
    for (size_t rank = 0; rank < d.comps.size(); ++rank) {
        auto J = comb_unrank(rank, n, k + 1);
        RatPoly s = c.zero();
        for (size_t m = 0; m <= k; ++m) {
            std::vector<size_t> rest;
            rest.reserve(k);
            for (size_t t = 0; t <= k; ++t)
                if (t != m) rest.push_back(J[t]);
            const RatPoly& comp = k == 0 ? alpha.comps[0] : alpha.component(rest);
            if (comp.is_zero()) continue;
            RatPoly term = comp.partial(c.coords[J[m]]);
            s += (m % 2 == 0) ? term : -term;
        }
        d.comps[rank] = std::move(s);
    }
    return d;
}

KForm interior(const VectorField& X, const KForm& alpha) {
    require_same_chart(X.chart, alpha.chart, "interior product");
    if (alpha.degree == 0) throw GckError("interior product: degree-0 form");
    const Chart& c = alpha.chart;
    const size_t n = c.dim(), k = alpha.degree;
    KForm r(c, k - 1);
    for (size_t rank = 0; rank < r.comps.size(); ++rank) {
        auto I = comb_unrank(rank, n, k - 1);
        RatPoly s = c.zero();
        for (size_t j = 0; j < n; ++j) {
            if (X.comps[j].is_zero()) continue;
            std::vector<size_t> full;
            full.reserve(k);
            full.push_back(j);
            full.insert(full.end(), I.begin(), I.end());
            RatPoly comp = alpha.component_signed(full);
            if (!comp.is_zero()) s += X.comps[j] * comp;
        }
        r.comps[rank] = std::move(s);
    }
    return r;
}

KForm lie_derivative(const VectorField& X, const KForm& alpha) {
    require_same_chart(X.chart, alpha.chart, "lie derivative");
    if (alpha.degree == 0) {
        KForm r(alpha.chart, 0);
        r.comps[0] = vf_scalar(X, alpha.comps[0]);
        return r;
    }
    KForm cartan = interior(X, exterior_d(alpha)) + exterior_d(interior(X, alpha));
    return cartan;
}

KForm wedge(const KForm& a, const KForm& b) {
    require_same_chart(a.chart, b.chart, "wedge");
    const Chart& c = a.chart;
    const size_t n = c.dim(), p = a.degree, q = b.degree;
    if (p + q > 4 || p + q > n) {
        if (p + q > 4) throw GckError("wedge: degree capped at 4");
        return KForm::zero(c, p + q);
    }
    KForm r(c, p + q);
    for (size_t rank = 0; rank < r.comps.size(); ++rank) {
        auto K = comb_unrank(rank, n, p + q);
        RatPoly s = c.zero();
        // Split K into an increasing p-subset and its complement.
        const size_t total = p + q;
        std::vector<size_t> choose(p);
        std::function<void(size_t, size_t)> rec = [&](size_t start, size_t picked) {
            if (picked == p) {
                std::vector<size_t> I, J;
                size_t ci = 0;
                for (size_t t = 0; t < total; ++t) {
                    if (ci < p && choose[ci] == t) {
                        I.push_back(K[t]);
                        ++ci;
                    } else {
                        J.push_back(K[t]);
                    }
                }
                // Shuffle sign: parity of the permutation (I, J) of K.
                int inversions = 0;
                for (size_t x : I)
                    for (size_t y : J)
                        if (x > y) ++inversions;
                const RatPoly& ca = p == 0 ? a.comps[0] : a.component(I);
                const RatPoly& cb = q == 0 ? b.comps[0] : b.component(J);
                if (!ca.is_zero() && !cb.is_zero()) {
                    RatPoly term = ca * cb;
                    s += (inversions % 2 == 0) ? term : -term;
                }
                return;
            }
            for (size_t t = start; t < total; ++t) {
                choose[picked] = t;
                rec(t + 1, picked + 1);
            }
        };
        rec(0, 0);
        r.comps[rank] = std::move(s);
    }
    return r;
}

RatPoly koszul_d2(const KForm& sigma, const VectorField& X, const VectorField& Y,
                  const VectorField& Z) {
    require_same_chart(sigma.chart, X.chart, "koszul");
    require_same_chart(sigma.chart, Y.chart, "koszul");
    require_same_chart(sigma.chart, Z.chart, "koszul");
    if (sigma.degree != 2) throw GckError("koszul: needs a 2-form");
    auto val = [&](const VectorField& A, const VectorField& B) {
        std::array<VectorField, 2> args{A, B};
        return sigma.apply(args);
    };
    return vf_scalar(X, val(Y, Z)) + vf_scalar(Y, val(Z, X)) + vf_scalar(Z, val(X, Y)) -
           val(lie_bracket(X, Y), Z) - val(lie_bracket(Z, X), Y) - val(lie_bracket(Y, Z), X);
}

RatPoly interior2_scalar(const KForm& sigma, const VectorField& X, const VectorField& Y) {
    std::array<VectorField, 2> args{X, Y};
    return sigma.apply(args);
}

KForm interior2(const KForm& theta3, const VectorField& X, const VectorField& Y) {
    if (theta3.degree != 3) throw GckError("interior2: needs a 3-form");
    return interior(Y, interior(X, theta3));
}

PolyMatrix sharp_form(const KForm& sigma) {
    if (sigma.degree != 2) throw GckError("sharp_form: needs a 2-form");
    const Chart& c = sigma.chart;
    const size_t n = c.dim();
    PolyMatrix m = PolyMatrix::zero(n, n, c.vars);
    for (size_t r = 0; r < n; ++r)
        for (size_t col = 0; col < n; ++col) {
            std::array<size_t, 2> idx{col, r};
            m.at(r, col) = sigma.component_signed(idx);  // sigma(d/dx_col, d/dx_r)
        }
    return m;
}

PolyMatrix sharp_bivector(const Bivector& pi) {
    const Chart& c = pi.chart;
    const size_t n = c.dim();
    PolyMatrix m = PolyMatrix::zero(n, n, c.vars);
    for (size_t r = 0; r < n; ++r)
        for (size_t col = 0; col < n; ++col) m.at(r, col) = pi.component_signed(col, r);
    return m;
}

KForm form_from_sharp(const Chart& c, const PolyMatrix& m) {
    KForm sigma(c, 2);
    for (size_t i = 0; i < c.dim(); ++i)
        for (size_t j = i + 1; j < c.dim(); ++j) {
            std::array<size_t, 2> idx{i, j};
            sigma.set_component(idx, m.at(j, i));
        }
    return sigma;
}

Bivector bivector_from_sharp(const Chart& c, const PolyMatrix& m) {
    Bivector pi(c);
    for (size_t i = 0; i < c.dim(); ++i)
        for (size_t j = i + 1; j < c.dim(); ++j) pi.set_component(i, j, m.at(j, i));
    return pi;
}

VectorField sharp_apply(const Chart& c, const PolyMatrix& pi_sharp, const KForm& xi) {
    if (xi.degree != 1) throw GckError("sharp apply: needs a 1-form");
    return VectorField(c, pi_sharp.apply(xi.comps));
}

KForm flat_apply(const Chart& c, const PolyMatrix& sigma_sharp, const VectorField& X) {
    return KForm(c, 1, sigma_sharp.apply(X.comps));
}

Bivector invert_2form(const KForm& omega) {
    if (omega.degree != 2) throw GckError("invert_2form: needs a 2-form");
    PolyMatrix w = sharp_form(omega);
    RatPoly det;
    PolyMatrix adj;
    w.det_adjugate(det, adj);
    if (det.is_zero() || !det.is_constant())
        throw NondegenerateInverseUnavailable(
            "invert_2form: determinant is not a nonzero constant (" + det.to_string() + ")");
    Rational inv = Rational(1) / det.constant_value();
    return bivector_from_sharp(omega.chart, adj.scaled(inv));
}

KForm pullback(const PolyMap& f, const KForm& alpha) {
    require_same_chart(f.target, alpha.chart, "pullback");
    const size_t k = alpha.degree;
    const Chart& src = f.source;
    if (k == 0) {
        KForm r(src, 0);
        r.comps[0] = f.pull_scalar(alpha.comps[0]);
        return r;
    }
    if (k > src.dim()) return KForm::zero(src, std::min<size_t>(k, 4));
    PolyMatrix jac = f.jacobian();
    KForm r(src, k);
    const size_t n_src = src.dim(), n_dst = f.target.dim();
    for (size_t rank = 0; rank < r.comps.size(); ++rank) {
        auto I = comb_unrank(rank, n_src, k);
        RatPoly s = src.zero();
        for (size_t jrank = 0; jrank < comb_count(n_dst, k); ++jrank) {
            auto J = comb_unrank(jrank, n_dst, k);
            RatPoly comp = alpha.comps[jrank];
            if (comp.is_zero()) continue;
            // Minor det of jac rows J, cols I.
            PolyMatrix sub(k, k, src.zero());
            for (size_t a = 0; a < k; ++a)
                for (size_t b = 0; b < k; ++b) sub.at(a, b) = jac.at(J[a], I[b]);
            RatPoly minor = sub.determinant();
            if (minor.is_zero()) continue;
            s += f.pull_scalar(comp) * minor;
        }
        r.comps[rank] = std::move(s);
    }
    return r;
}

VectorField nijenhuis_pair(const EndoField& a, size_t i, size_t j) {
    const Chart& c = a.chart;
    VectorField X = VectorField::basis(c, i), Y = VectorField::basis(c, j);
    VectorField aX = a.apply(X), aY = a.apply(Y);
    // [X, Y] = 0 for coordinate fields, so the a^2 term drops.
    VectorField r = lie_bracket(aX, aY);
    r = r - a.apply(lie_bracket(aX, Y) + lie_bracket(X, aY));
    return r;
}

}  // namespace gck
