// Deterministic generators for the property suites: valid structures are
// produced constructively (closed 2-form -> commuting endomorphism over a
// symplectic form with constant-determinant inverse), so the positive test
// set is guaranteed nonempty; perturbations produce refutable inputs.
#pragma once

#include <random>

#include "gck/groupoid.hpp"

namespace gck {

class FuzzRng {
  public:
    explicit FuzzRng(uint64_t seed) : rng_(seed) {}

    uint64_t next(uint64_t bound) { return bound ? rng_() % bound : 0; }
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(next(static_cast<uint64_t>(hi - lo + 1)));
    }
    bool chance(unsigned percent) { return next(100) < percent; }
    Rational rational();                       // small, possibly negative, may be zero
    Rational nonzero_rational();
    RatPoly poly(const Chart& c, uint32_t max_degree, size_t terms);
    // Polynomial that does not involve coordinate `skip`.
    RatPoly poly_without(const Chart& c, size_t skip, uint32_t max_degree, size_t terms);
    KForm one_form(const Chart& c, uint32_t max_degree);
    KForm two_form(const Chart& c, uint32_t max_degree);
    VectorField vector_field(const Chart& c, uint32_t max_degree);

  private:
    std::mt19937_64 rng_;
};

// Chart with coordinates x0..x{n-1}.
Chart coordinate_chart(size_t n);

// Sum of dx_{2i} ^ dx_{2i+1}.
KForm standard_symplectic(const Chart& c);

// Constant complex-structure block [[0,-1],[1,0]] per coordinate pair.
EndoField standard_complex(const Chart& c);

// Pullback of the standard symplectic form along unipotent polynomial
// shears: closed, with constant unit determinant.
KForm fuzz_symplectic(const Chart& c, FuzzRng& rng, uint32_t degree, size_t shears = 2);

// d(random 1-form) + constant 2-form.
KForm fuzz_closed_two_form(const Chart& c, FuzzRng& rng, uint32_t degree);

// Valid Hitchin pair via the 2-form <-> commuting-endomorphism bijection.
HitchinPair fuzz_hitchin_pair(const Chart& c, FuzzRng& rng, uint32_t degree);

GeneralizedStructure fuzz_gcs(const Chart& c, FuzzRng& rng, uint32_t degree);

// Commuting (omega, a) with omega arbitrary (generally non-closed):
// a = g0 Id + g1 B + g2 B^2 with B = P0 omega# for a constant invertible P0.
std::pair<KForm, EndoField> fuzz_commuting_pair(const Chart& c, FuzzRng& rng, uint32_t degree);

// Nonzero constant 2-form, handy as a structure-breaking perturbation.
KForm constant_two_form(const Chart& c, FuzzRng& rng);

// The stock non-Poisson bivector on a 3-dimensional chart:
// pi = dx0^dx1-component 1 plus x0 times the dx0^dx2-component
// (span(e0, e1 + x0 e2) is not involutive).
Bivector non_poisson_bivector(const Chart& c3);

struct FuzzSummary {
    uint64_t seed = 0;
    size_t dim = 0;
    uint32_t degree = 0;
    size_t count = 0;
    size_t checks = 0;
    size_t passes = 0;
    std::vector<std::string> failures;
    // property name -> {passes, total}
    std::vector<std::pair<std::string, std::pair<size_t, size_t>>> per_property;

    bool all_passed() const { return passes == checks; }
};

// The cross-checker equivalence suite behind `gck fuzz`.
FuzzSummary run_fuzz_suite(uint64_t seed, size_t dim, uint32_t degree, size_t count);
std::string fuzz_summary_text(const FuzzSummary& s);

}  // namespace gck
