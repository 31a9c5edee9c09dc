// Polynomial-coefficient tensor calculus on a single coordinate chart:
// vector fields, k-forms (k <= 4), bivectors, (1,1)-tensors, polynomial maps,
// and the operators d, i_X, L_X, [.,.], wedge, pullback.
//
// Sign conventions are pinned once and used everywhere through the musical
// maps rather than raw components:
//   sharp_form:     sigma_sharp(X) = i_X sigma
//   sharp_bivector: beta(pi_sharp(alpha)) = pi(alpha, beta)
// One visible consequence, asserted in the tests: inverting omega = dx^dy
// yields the bivector with pi_sharp(dx) = -d/dy.
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>

#include "gck/ratpoly.hpp"

namespace gck {

struct Chart {
    VarList coords;
    VarListPtr vars;

    explicit Chart(VarList names);
    size_t dim() const { return coords.size(); }
    bool operator==(const Chart& o) const { return coords == o.coords; }

    RatPoly zero() const { return RatPoly::zero(vars); }
    RatPoly constant(Rational c) const { return RatPoly::constant(vars, std::move(c)); }
    RatPoly coordinate(size_t i) const { return RatPoly::variable(vars, coords.at(i)); }
    RatPoly parse(const std::string& text) const { return RatPoly::parse(vars, text); }
};

// Increasing multi-index utilities shared by KForm and Bivector storage.
size_t comb_count(size_t n, size_t k);
size_t comb_rank(std::span<const size_t> tuple, size_t n);
std::vector<size_t> comb_unrank(size_t rank, size_t n, size_t k);

class PolyMatrix {
  public:
    PolyMatrix() = default;
    PolyMatrix(size_t rows, size_t cols, const RatPoly& fill);
    static PolyMatrix identity(size_t n, const VarListPtr& vars);
    static PolyMatrix zero(size_t rows, size_t cols, const VarListPtr& vars);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    RatPoly& at(size_t r, size_t c) { return a_.at(r * cols_ + c); }
    const RatPoly& at(size_t r, size_t c) const { return a_.at(r * cols_ + c); }

    PolyMatrix transpose() const;
    bool is_zero() const;
    bool operator==(const PolyMatrix& o) const;

    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    PolyMatrix operator-() const;
    PolyMatrix scaled(const Rational& c) const;

    std::vector<RatPoly> apply(std::span<const RatPoly> v) const;

    // Determinant by Laplace expansion with memoization on column subsets.
    RatPoly determinant() const;
    // Determinant and adjugate via the Faddeev-LeVerrier recursion, so the
    // inverse of a constant-determinant matrix stays in the polynomial ring.
    void det_adjugate(RatPoly& det, PolyMatrix& adj) const;

    // Entry-wise substitution (used for composing with polynomial maps).
    PolyMatrix substitute(const std::map<std::string, RatPoly>& images, VarListPtr target_vars) const;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<RatPoly> a_;
};

struct VectorField {
    Chart chart;
    std::vector<RatPoly> comps;  // coefficients of d/dx_i

    VectorField(Chart c, std::vector<RatPoly> v);
    static VectorField zero(const Chart& c);
    static VectorField basis(const Chart& c, size_t i);
    bool is_zero() const;
    bool operator==(const VectorField& o) const;
    friend VectorField operator+(const VectorField& a, const VectorField& b);
    friend VectorField operator-(const VectorField& a, const VectorField& b);
    VectorField scaled_by(const RatPoly& f) const;
};

// Alternating k-form, components stored on strictly increasing multi-indices.
struct KForm {
    Chart chart;
    size_t degree;
    std::vector<RatPoly> comps;  // size comb_count(dim, degree)

    KForm(Chart c, size_t k);
    KForm(Chart c, size_t k, std::vector<RatPoly> v);
    static KForm zero(const Chart& c, size_t k);
    // Coordinate form dx_{i1} ^ ... ^ dx_{ik} for an arbitrary index tuple;
    // repeated indices give zero, odd permutations flip sign.
    static KForm coordinate(const Chart& c, std::span<const size_t> idx);

    const RatPoly& component(std::span<const size_t> increasing_idx) const;
    void set_component(std::span<const size_t> increasing_idx, RatPoly p);
    // Fully antisymmetric component lookup for arbitrary index tuples.
    RatPoly component_signed(std::span<const size_t> idx) const;

    bool is_zero() const;
    bool operator==(const KForm& o) const;
    friend KForm operator+(const KForm& a, const KForm& b);
    friend KForm operator-(const KForm& a, const KForm& b);
    KForm operator-() const;
    KForm scaled_by(const RatPoly& f) const;

    // Value on k vector fields.
    RatPoly apply(std::span<const VectorField> args) const;
};

struct Bivector {
    Chart chart;
    std::vector<RatPoly> comps;  // increasing pairs, same layout as a 2-form

    Bivector(Chart c);
    Bivector(Chart c, std::vector<RatPoly> v);
    static Bivector zero(const Chart& c);
    const RatPoly& component(size_t i, size_t j) const;  // requires i < j
    void set_component(size_t i, size_t j, RatPoly p);
    RatPoly component_signed(size_t i, size_t j) const;
    bool is_zero() const;
    bool operator==(const Bivector& o) const;
    friend Bivector operator+(const Bivector& a, const Bivector& b);
    Bivector operator-() const;
    // pi(alpha, beta) for 1-forms.
    RatPoly apply(const KForm& alpha, const KForm& beta) const;
};

struct EndoField {
    Chart chart;
    PolyMatrix m;  // column j = image of d/dx_j

    EndoField(Chart c, PolyMatrix mat);
    static EndoField zero(const Chart& c);
    static EndoField identity(const Chart& c);
    static EndoField scalar(const Chart& c, const RatPoly& f);
    VectorField apply(const VectorField& X) const;
    // Dual action on 1-forms: (a* xi)(X) = xi(aX).
    KForm coapply(const KForm& xi) const;
    bool operator==(const EndoField& o) const;
    friend EndoField operator+(const EndoField& a, const EndoField& b);
    friend EndoField operator-(const EndoField& a, const EndoField& b);
    friend EndoField operator*(const EndoField& a, const EndoField& b);  // composition
    EndoField operator-() const;
};

struct PolyMap {
    Chart source;
    Chart target;
    std::vector<RatPoly> comps;  // one polynomial per target coordinate, over source vars

    PolyMap(Chart src, Chart dst, std::vector<RatPoly> v);
    static PolyMap identity(const Chart& c);
    PolyMatrix jacobian() const;  // target_dim x source_dim, entries over source vars
    // Substitution map sending target variables to the component polynomials.
    std::map<std::string, RatPoly> images() const;
    RatPoly pull_scalar(const RatPoly& f) const;  // f on target -> f∘map on source
    std::vector<Rational> apply_point(const std::vector<Rational>& p) const;
};

PolyMap compose(const PolyMap& g, const PolyMap& f);  // g∘f

// --- core operators -------------------------------------------------------

VectorField lie_bracket(const VectorField& X, const VectorField& Y);
KForm exterior_d(const KForm& alpha);
KForm interior(const VectorField& X, const KForm& alpha);
KForm lie_derivative(const VectorField& X, const KForm& alpha);
KForm wedge(const KForm& a, const KForm& b);

// Six-term expansion of (d sigma)(X, Y, Z) through Lie derivatives and
// brackets; independent route used as the oracle for exterior_d on 2-forms.
RatPoly koszul_d2(const KForm& sigma, const VectorField& X, const VectorField& Y,
                  const VectorField& Z);

// i_{X^Y} theta = theta(X, Y, ...) for a 2- or 3-form theta.
RatPoly interior2_scalar(const KForm& sigma, const VectorField& X, const VectorField& Y);
KForm interior2(const KForm& theta3, const VectorField& X, const VectorField& Y);

// Musical maps as coordinate matrices.
PolyMatrix sharp_form(const KForm& sigma);       // TM -> T*M
PolyMatrix sharp_bivector(const Bivector& pi);   // T*M -> TM
KForm form_from_sharp(const Chart& c, const PolyMatrix& m);
Bivector bivector_from_sharp(const Chart& c, const PolyMatrix& m);

VectorField sharp_apply(const Chart& c, const PolyMatrix& pi_sharp, const KForm& xi);
KForm flat_apply(const Chart& c, const PolyMatrix& sigma_sharp, const VectorField& X);

// Inverse of a non-degenerate 2-form, pi_sharp = (omega_sharp)^{-1}.
// Requires the determinant of omega_sharp to be a nonzero constant.
Bivector invert_2form(const KForm& omega);

KForm pullback(const PolyMap& f, const KForm& alpha);

// Nijenhuis torsion of a (1,1)-tensor evaluated on a coordinate basis pair.
VectorField nijenhuis_pair(const EndoField& a, size_t i, size_t j);

struct NondegenerateInverseUnavailable : GckError {
    explicit NondegenerateInverseUnavailable(const std::string& w) : GckError(w) {}
};

}  // namespace gck
