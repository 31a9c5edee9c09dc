// Generalized holomorphic maps between charts, Hitchin realizations,
// pointwise fiber checks, and the moment map equation.
#pragma once

#include "gck/hitchin.hpp"

namespace gck {

struct GHolMapCandidate {
    PolyMap f;
    GeneralizedStructure source_structure;
    GeneralizedStructure target_structure;

    GHolMapCandidate(PolyMap map, GeneralizedStructure src, GeneralizedStructure dst);
};

struct NotRegularPoint : GckError {
    explicit NotRegularPoint(const std::string& w) : GckError(w) {}
};

struct NotInIsotropyKernel : GckError {
    explicit NotInIsotropyKernel(const std::string& w) : GckError(w) {}
};

// f-relatedness of bivectors: df ∘ pi1# ∘ (df)* = pi2# ∘ f.
CheckReport pushforward_bivector_check(const PolyMap& f, const Bivector& pi1, const Bivector& pi2);

// Three legs: bivector relatedness, sigma1 = f* sigma2, (df) a1 = (a2∘f) (df).
CheckReport check_gholomorphic(const GHolMapCandidate& c);

// mu from the pair's structure into the target.
CheckReport check_hitchin_realization(const PolyMap& mu, const HitchinPair& pair,
                                      const GeneralizedStructure& target);

// At a regular rational point: a1 preserves Ker(df), squares to -Id on it,
// and the torsion tensor vanishes on kernel directions.
CheckReport fiber_complex_check(const GHolMapCandidate& c, const std::vector<Rational>& point);

// Pointwise moment-map defect i_{rho} omega - mu* alpha at `point`, for a
// covector alpha in Ker(pi2#) at mu(point).
CheckReport moment_map_defect(const PolyMap& mu, const KForm& omega, const Bivector& target_pi,
                              const std::vector<Rational>& point,
                              const std::vector<Rational>& alpha, const VectorField& rho);

}  // namespace gck
