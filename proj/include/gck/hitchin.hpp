// Hitchin pairs (omega, a): commutation, the twist, conversion to and from
// non-degenerate generalized structures, and the unconditional torsion
// identity for commuting pairs.
#pragma once

#include "gck/courant.hpp"

namespace gck {

struct HitchinPair {
    KForm omega;  // degree 2
    EndoField a;

    HitchinPair(KForm w, EndoField e);
    const Chart& chart() const { return a.chart; }
};

struct CommutationFailure : GckError {
    explicit CommutationFailure(const std::string& w) : GckError(w) {}
};

struct DegeneratePi : GckError {
    explicit DegeneratePi(const std::string& w) : GckError(w) {}
};

// omega_sharp a - a* omega_sharp; zero iff omega(aX, Y) = omega(X, aY).
PolyMatrix commutation_defect(const KForm& omega, const EndoField& a);
bool commutes(const KForm& omega, const EndoField& a);

// omega_a(X, Y) = omega(aX, Y); requires commutation.
KForm omega_a(const KForm& omega, const EndoField& a);
// a*omega(X, Y) = omega(aX, aY); defined for any pair.
KForm a_star_omega(const KForm& omega, const EndoField& a);

CheckReport check_hitchin_pair(const HitchinPair& p);

// sigma = -(omega + a*omega)
KForm twist(const HitchinPair& p);

GeneralizedStructure hitchin_to_gcs(const HitchinPair& p);
HitchinPair gcs_to_hitchin(const GeneralizedStructure& s);

// a := pi_sharp ∘ beta_sharp for pi = omega^{-1}; commutes with omega and has
// omega_a = beta. This is the generating correspondence between 2-forms and
// commuting endomorphisms over a non-degenerate omega.
EndoField commuting_endo(const KForm& omega, const KForm& beta);

// i_{N_a(X,Y)} omega - i_{aX^Y + X^aY}(d omega_a) + i_{aX^aY}(d omega)
//   + i_{X^Y}(d(a*omega))  on all coordinate basis pairs.
// Holds identically for every commuting pair.
CheckReport torsion_identity_defect(const KForm& omega, const EndoField& a);

// 2 d omega_J(X,Y,Z) - d omega(JX,Y,Z) - d omega(X,JY,Z) - d omega(X,Y,JZ)
//   - d omega(JX,JY,JZ)  for a complex structure J commuting with omega.
CheckReport complex_commuting_defect(const EndoField& J, const KForm& omega);

// Symplectic omega + complex J commuting; also records the equivalent
// characterization d omega_J = 0, omega + J*omega = 0 and their agreement.
CheckReport sc_structure_check(const KForm& omega, const EndoField& J);

}  // namespace gck
