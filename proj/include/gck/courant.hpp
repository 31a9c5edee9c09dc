// The generalized tangent bundle TM ⊕ T*M on a chart: sections, pairing,
// Courant bracket, the block operator J = [[a, pi_sharp],[sigma_sharp, -a*]],
// its integrability tensor, and the condition checkers (C1)-(C4).
#pragma once

#include "gck/gaussian.hpp"
#include "gck/report.hpp"
#include "gck/tensor.hpp"

namespace gck {

struct GSection {
    VectorField vec;
    KForm form;  // degree 1

    GSection(VectorField v, KForm f);
    static GSection zero(const Chart& c);
    static GSection from_vector(const VectorField& v);
    static GSection from_form(const KForm& f);
    const Chart& chart() const { return vec.chart; }
    bool is_zero() const { return vec.is_zero() && form.is_zero(); }
    bool operator==(const GSection& o) const { return vec == o.vec && form == o.form; }
    friend GSection operator+(const GSection& a, const GSection& b);
    friend GSection operator-(const GSection& a, const GSection& b);
    GSection scaled_by(const RatPoly& f) const;
};

struct GeneralizedStructure {
    EndoField a;
    Bivector pi;
    KForm sigma;  // degree 2

    GeneralizedStructure(EndoField a_, Bivector pi_, KForm sigma_);
    const Chart& chart() const { return a.chart; }
    PolyMatrix pi_sharp() const { return sharp_bivector(pi); }
    PolyMatrix sigma_sharp() const { return sharp_form(sigma); }
    // The 2n x 2n block matrix of the operator.
    PolyMatrix block_matrix() const;
};

RatPoly pairing(const GSection& alpha, const GSection& beta);
GSection courant_bracket(const GSection& alpha, const GSection& beta);
GSection apply_J(const GeneralizedStructure& s, const GSection& alpha);

// [J a, J b] - [a, b] - J([J a, b] + [a, J b])
GSection integrability_defect(const GeneralizedStructure& s, const GSection& alpha,
                              const GSection& beta);

// [xi, eta]_pi = L_{pi# xi} eta - L_{pi# eta} xi - d pi(xi, eta)
KForm pi_bracket(const Bivector& pi, const KForm& xi, const KForm& eta);

CheckReport check_C1(const Bivector& pi);
CheckReport check_C2(const Bivector& pi, const EndoField& a);
CheckReport check_C3(const Bivector& pi, const EndoField& a, const KForm& sigma);
CheckReport check_C4(const EndoField& a, const KForm& sigma);
CheckReport check_gcs(const GeneralizedStructure& s);

GeneralizedStructure opposite(const GeneralizedStructure& s);

// Gauge transform by a 2-form B (the GCS property survives only for closed
// B; the algebra is defined for any B and callers flag non-closed input).
GeneralizedStructure gauge(const GeneralizedStructure& s, const KForm& B);
// Literal 2n x 2n conjugation [[1,0],[-B,1]] J [[1,0],[B,1]], the cross-check
// route for the block formulas.
PolyMatrix gauge_conjugated_matrix(const GeneralizedStructure& s, const KForm& B);

// Isotropy and Courant involutivity of L = {(pi# xi, a* xi)}.
CheckReport dirac_check(const Bivector& pi, const EndoField& a);

// Pointwise +i eigenspace verification over Gaussian rationals.
CheckReport eigenspace_check(const GeneralizedStructure& s, const std::vector<Rational>& point);

// Brute-force integrability oracle: the defect on every coordinate basis
// pair of sections plus the three pointwise block identities. Independent of
// the (C1)-(C4) route; the two must agree.
CheckReport integrability_report(const GeneralizedStructure& s);

// General-argument Nijenhuis torsion.
VectorField nijenhuis(const EndoField& a, const VectorField& X, const VectorField& Y);

// sigma_a(X, Y) = sigma(aX, Y) read off on the increasing coordinate basis.
// Coincides with the 2-form sigma(a., .) exactly when (4.1) holds.
KForm sigma_a_form(const EndoField& a, const KForm& sigma);

// The component equations of the integrability expansion, exposed for the
// proof-audit suite.
VectorField int1_defect(const GeneralizedStructure& s, const VectorField& X, const KForm& xi);
KForm int2_defect(const GeneralizedStructure& s, const VectorField& X, const KForm& xi);
VectorField int3_defect(const GeneralizedStructure& s, const VectorField& X, const VectorField& Y);
KForm int4_defect(const GeneralizedStructure& s, const VectorField& X, const VectorField& Y);
VectorField eq32_defect(const GeneralizedStructure& s, const VectorField& X, const VectorField& Y);
RatPoly eq42_defect(const GeneralizedStructure& s, const VectorField& X, const VectorField& Y,
                    const VectorField& Z);

}  // namespace gck
