// Exact multivariate polynomials over Q with named variables.
//
// Terms are kept in a canonical map keyed by exponent vectors, so structural
// equality decides identity in the ring: a check passes exactly when its
// defect polynomial normalizes to the empty term map. Variables are aligned
// by name, which lets polynomials over different charts combine (pullbacks
// between charts of different dimension rely on this).
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gck/rational.hpp"

namespace gck {

using VarList = std::vector<std::string>;
using VarListPtr = std::shared_ptr<const VarList>;
using Exponents = std::vector<uint32_t>;

VarListPtr make_vars(VarList names);

class RatPoly {
  public:
    RatPoly() : vars_(make_vars({})) {}
    explicit RatPoly(VarListPtr vars) : vars_(std::move(vars)) {}

    static RatPoly zero(VarListPtr vars) { return RatPoly(std::move(vars)); }
    static RatPoly constant(VarListPtr vars, Rational c);
    static RatPoly variable(VarListPtr vars, const std::string& name);
    static RatPoly monomial(VarListPtr vars, Exponents e, Rational c);

    const VarList& vars() const { return *vars_; }
    const VarListPtr& vars_ptr() const { return vars_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // The constant value; fails unless is_constant().
    Rational constant_value() const;
    uint32_t total_degree() const;

    RatPoly operator-() const;
    friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    RatPoly& operator+=(const RatPoly& o) { return *this = *this + o; }
    RatPoly& operator-=(const RatPoly& o) { return *this = *this - o; }
    RatPoly& operator*=(const RatPoly& o) { return *this = *this * o; }
    RatPoly scaled(const Rational& c) const;

    bool operator==(const RatPoly& o) const;

    // Formal partial derivative; the coordinate must be a known variable.
    RatPoly partial(const std::string& coordinate) const;

    // Exact evaluation; point length must match the variable count.
    Rational eval(const std::vector<Rational>& point) const;

    // Substitutes every variable by the polynomial mapped to its name.
    // Variables without an entry are rejected.
    RatPoly substitute(const std::map<std::string, RatPoly>& images, VarListPtr target_vars) const;

    // Canonical textual form, e.g. "3*x0^2*x1 - 1/2*x1". Terms are ordered
    // lexicographically by descending exponent vector; "0" for the zero
    // polynomial.
    std::string to_string() const;

    // Parses the grammar produced by to_string (sums of rational-coefficient
    // monomials; no parentheses).
    static RatPoly parse(VarListPtr vars, const std::string& text);

  private:
    VarListPtr vars_;
    std::map<Exponents, Rational> terms_;

    void add_term(const Exponents& e, const Rational& c);
    static void align(const RatPoly& a, const RatPoly& b, RatPoly& a2, RatPoly& b2);
    RatPoly with_vars(const VarListPtr& vars) const;
    friend class PolyParser;
};

RatPoly operator*(const Rational& c, const RatPoly& p);

}  // namespace gck
