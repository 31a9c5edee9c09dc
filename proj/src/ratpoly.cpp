#include "gck/ratpoly.hpp"

#include <algorithm>
#include <cctype>

namespace gck {

VarListPtr make_vars(VarList names) {
    return std::make_shared<const VarList>(std::move(names));
}

static size_t var_index(const VarList& vars, const std::string& name) {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return i;
    throw GckError("unknown coordinate '" + name + "'");
}

RatPoly RatPoly::constant(VarListPtr vars, Rational c) {
    RatPoly p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace(Exponents(p.vars_->size(), 0), std::move(c));
    return p;
}

RatPoly RatPoly::variable(VarListPtr vars, const std::string& name) {
    RatPoly p(vars);
    Exponents e(vars->size(), 0);
    e[var_index(*vars, name)] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

RatPoly RatPoly::monomial(VarListPtr vars, Exponents e, Rational c) {
    RatPoly p(std::move(vars));
    if (e.size() != p.vars_->size()) throw GckError("RatPoly: exponent arity mismatch");
    if (!c.is_zero()) p.terms_.emplace(std::move(e), std::move(c));
    return p;
}

bool RatPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](uint32_t k) { return k == 0; });
}

Rational RatPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw GckError("RatPoly: not a constant");
    return terms_.begin()->second;
}

uint32_t RatPoly::total_degree() const {
    uint32_t d = 0;
    for (const auto& [e, c] : terms_) {
        uint32_t s = 0;
        for (uint32_t k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

void RatPoly::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

RatPoly RatPoly::with_vars(const VarListPtr& vars) const {
    if (vars == vars_ || *vars == *vars_) {
        RatPoly p = *this;
        p.vars_ = vars;
        return p;
    }
    std::vector<size_t> where(vars_->size());
    for (size_t i = 0; i < vars_->size(); ++i) where[i] = var_index(*vars, (*vars_)[i]);
    RatPoly p(vars);
    for (const auto& [e, c] : terms_) {
        Exponents e2(vars->size(), 0);
        for (size_t i = 0; i < e.size(); ++i) e2[where[i]] = e[i];
        p.add_term(e2, c);
    }
    return p;
}

void RatPoly::align(const RatPoly& a, const RatPoly& b, RatPoly& a2, RatPoly& b2) {
    if (a.vars_ == b.vars_ || *a.vars_ == *b.vars_) {
        a2 = a;
        b2 = b;
        b2.vars_ = a2.vars_;
        return;
    }
    VarList merged = *a.vars_;
    for (const auto& v : *b.vars_)
        if (std::find(merged.begin(), merged.end(), v) == merged.end()) merged.push_back(v);
    VarListPtr vars = make_vars(std::move(merged));
    a2 = a.with_vars(vars);
    b2 = b.with_vars(vars);
}

RatPoly RatPoly::operator-() const {
    RatPoly p(vars_);
    for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
    return p;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    RatPoly x, y;
    RatPoly::align(a, b, x, y);
    for (const auto& [e, c] : y.terms_) x.add_term(e, c);
    return x;
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    RatPoly x, y;
    RatPoly::align(a, b, x, y);
    RatPoly r(x.vars_);
    for (const auto& [ea, ca] : x.terms_) {
        for (const auto& [eb, cb] : y.terms_) {
            Exponents e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

RatPoly RatPoly::scaled(const Rational& c) const {
    RatPoly p(vars_);
    if (c.is_zero()) return p;
    for (const auto& [e, k] : terms_) p.terms_.emplace(e, k * c);
    return p;
}

RatPoly operator*(const Rational& c, const RatPoly& p) { return p.scaled(c); }

bool RatPoly::operator==(const RatPoly& o) const {
    if (vars_ == o.vars_ || *vars_ == *o.vars_) return terms_ == o.terms_;
    RatPoly x, y;
    align(*this, o, x, y);
    return x.terms_ == y.terms_;
}

RatPoly RatPoly::partial(const std::string& coordinate) const {
    size_t i = var_index(*vars_, coordinate);
    RatPoly p(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponents e2 = e;
        e2[i] -= 1;
        p.add_term(e2, c * Rational(static_cast<long long>(e[i])));
    }
    return p;
}

Rational RatPoly::eval(const std::vector<Rational>& point) const {
    if (point.size() != vars_->size())
        throw GckError("RatPoly: evaluation point has wrong dimension");
    Rational total(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < e.size(); ++i) {
            for (uint32_t k = 0; k < e[i]; ++k) t *= point[i];
        }
        total += t;
    }
    return total;
}

RatPoly RatPoly::substitute(const std::map<std::string, RatPoly>& images, VarListPtr target_vars) const {
    RatPoly result = RatPoly::zero(target_vars);
    // Cache powers of each image polynomial.
    std::vector<const RatPoly*> image(vars_->size(), nullptr);
    for (size_t i = 0; i < vars_->size(); ++i) {
        auto it = images.find((*vars_)[i]);
        if (it == images.end()) throw GckError("substitute: no image for '" + (*vars_)[i] + "'");
        image[i] = &it->second;
    }
    std::vector<std::vector<RatPoly>> powers(vars_->size());
    auto power = [&](size_t i, uint32_t k) -> const RatPoly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(RatPoly::constant(target_vars, Rational(1)));
        while (cache.size() <= k) cache.push_back(cache.back() * (*image[i]));
        return cache[k];
    };
    for (const auto& [e, c] : terms_) {
        RatPoly t = RatPoly::constant(target_vars, c);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t *= power(i, e[i]);
        result += t;
    }
    return result;
}

std::string RatPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    // Descending lexicographic exponent order puts leading terms first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (first) {
            if (a.is_negative()) {
                out += "-";
                a = -a;
            }
        } else {
            out += a.is_negative() ? " - " : " + ";
            if (a.is_negative()) a = -a;
        }
        first = false;
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += (*vars_)[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out += a.to_string();
        } else if (a.is_one()) {
            out += mono;
        } else {
            out += a.to_string() + "*" + mono;
        }
    }
    return out;
}

// ------------------------------------------------------------ parsing

class PolyParser {
  public:
    PolyParser(VarListPtr vars, const std::string& text) : vars_(std::move(vars)), s_(text) {}

    RatPoly run() {
        RatPoly p(vars_);
        skip_ws();
        if (done()) throw GckError("poly parse: empty input");
        bool neg = accept_sign();
        p += term(neg);
        while (true) {
            skip_ws();
            if (done()) break;
            char c = s_[pos_];
            if (c != '+' && c != '-')
                throw GckError("poly parse: unexpected '" + std::string(1, c) + "'");
            ++pos_;
            p += term(c == '-');
        }
        return p;
    }

  private:
    VarListPtr vars_;
    const std::string& s_;
    size_t pos_ = 0;

    bool done() const { return pos_ >= s_.size(); }
    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept_sign() {
        skip_ws();
        if (!done() && s_[pos_] == '+') { ++pos_; return false; }
        if (!done() && s_[pos_] == '-') { ++pos_; return true; }
        return false;
    }

    std::string read_number() {
        skip_ws();
        size_t start = pos_;
        while (!done() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw GckError("poly parse: expected number");
        return s_.substr(start, pos_ - start);
    }

    std::string read_ident() {
        skip_ws();
        size_t start = pos_;
        if (done() || !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            throw GckError("poly parse: expected identifier");
        while (!done() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    RatPoly term(bool negated) {
        skip_ws();
        Rational coef(1);
        Exponents e(vars_->size(), 0);
        bool saw_factor = false;
        bool expect_factor = true;
        while (expect_factor) {
            skip_ws();
            if (!done() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                std::string num = read_number();
                skip_ws();
                if (!done() && s_[pos_] == '/') {
                    ++pos_;
                    std::string den = read_number();
                    coef *= Rational(BigInt::from_string(num), BigInt::from_string(den));
                } else {
                    coef *= Rational(BigInt::from_string(num));
                }
            } else {
                std::string name = read_ident();
                size_t i = var_index(*vars_, name);
                uint32_t k = 1;
                skip_ws();
                if (!done() && s_[pos_] == '^') {
                    ++pos_;
                    k = static_cast<uint32_t>(BigInt::from_string(read_number()).to_int64());
                }
                e[i] += k;
            }
            saw_factor = true;
            skip_ws();
            if (!done() && s_[pos_] == '*') {
                ++pos_;
            } else {
                expect_factor = false;
            }
        }
        if (!saw_factor) throw GckError("poly parse: empty term");
        if (negated) coef = -coef;
        return RatPoly::monomial(vars_, std::move(e), coef);
    }
};

RatPoly RatPoly::parse(VarListPtr vars, const std::string& text) {
    return PolyParser(std::move(vars), text).run();
}

}  // namespace gck
