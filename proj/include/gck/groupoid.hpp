// The pair groupoid M x M over a chart and its multiplicative structure:
// the symplectic form s*omega - t*omega, the block (1,1)-tensor, the twist
// identity omega + J*omega = t*sigma - s*sigma, and the gauge action.
//
// Orientation is pinned to omega_S = s*omega - t*omega: with the twist
// sigma = -(omega + a*omega) this is the unique sign for which the Hitchin
// groupoid identity closes on the pair groupoid. Under the project's sharp
// conventions the source projection s is then the Poisson map and t the
// anti-Poisson one, and (t, s) is generalized holomorphic into the product
// carrying the opposite structure on the t-factor.
#pragma once

#include "gck/morphism.hpp"

namespace gck {

struct PairGroupoid {
    Chart base;        // M
    Chart total;       // Sigma = M x M, coordinates suffixed _1 (t) and _2 (s)
    Chart composable;  // triples (x, y, z), suffixes _1, _2, _3
    PolyMap t, s, m, unit, inv, pr1, pr2;
};

PairGroupoid build_pair_groupoid(const Chart& base);

// Associativity, unit and inversion laws as polynomial map identities.
CheckReport groupoid_axioms(const PairGroupoid& g);

struct HitchinGroupoidCandidate {
    PairGroupoid g;
    HitchinPair base_pair;  // (omega, a) on the base
    KForm omega_S;          // on total
    EndoField J_S;          // on total
    KForm sigma;            // on base
};

struct NonClosedB : GckError {
    explicit NonClosedB(const std::string& w) : GckError(w) {}
};

HitchinGroupoidCandidate build_pair_hitchin_groupoid(const HitchinPair& pair);

// m*omega = pr1*omega + pr2*omega on the composable chart.
CheckReport check_multiplicative_form(const PairGroupoid& g, const KForm& omega);

// Tangency to the composable locus plus dm-equivariance, expressed as block
// identities of the (1,1)-tensor on the composable chart.
CheckReport check_multiplicative_endo(const PairGroupoid& g, const EndoField& J);

// (1) omega_S symplectic; (2) omega_S and J_S multiplicative; (3) (omega_S,
// J_S) a Hitchin pair on Sigma; (4) omega_S + J*omega_S = t*sigma - s*sigma.
CheckReport check_hitchin_groupoid(const HitchinGroupoidCandidate& c);

// (t, s) into the product of the base structure (opposite on the t-factor)
// is generalized holomorphic; also certifies the intertwining identities
// dt∘J = a∘dt and ds∘J = a∘ds that hold under this orientation.
CheckReport check_ts_gholomorphic(const HitchinGroupoidCandidate& c);

// J_B = J + omega^{-1}(s*B - t*B); sigma is replaced by the twist of the
// gauged base structure. Requires dB = 0.
HitchinGroupoidCandidate groupoid_gauge(const HitchinGroupoidCandidate& c, const KForm& B);

// The pair groupoid has trivial isotropy; checks that J_S fixes the zero
// space Ker(dt) ∩ Ker(ds) at the unit over x and that J_S restricted to
// Ker(ds) satisfies the pointwise identity a^2 = -Id - pi# sigma#.
CheckReport isotropy_complex_check(const HitchinGroupoidCandidate& c,
                                   const std::vector<Rational>& x);

// Right-invariant extension of a base vector field into the t-factor;
// on the pair groupoid that is (v(x), 0) at (x, y).
VectorField right_invariant_extension(const PairGroupoid& g, const VectorField& v);

// The induced bundle map alpha -> omega(alpha_ext, .)|_TM at units, as an
// n x n matrix over the base (column i = the 1-form for the i-th generator
// of Ker(ds)|_M).
PolyMatrix im_form_of_multiplicative(const PairGroupoid& g, const KForm& omega_S);

}  // namespace gck
