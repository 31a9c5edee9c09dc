#include "gck/fuzz.hpp"

#include <array>
#include <sstream>

#include "gck/algebroid.hpp"

namespace gck {

Rational FuzzRng::rational() {
    long long num = int_in(-3, 3);
    static const long long dens[] = {1, 1, 1, 2, 2, 3};
    return Rational(num, dens[next(6)]);
}

Rational FuzzRng::nonzero_rational() {
    Rational r = rational();
    return r.is_zero() ? Rational(1) : r;
}

RatPoly FuzzRng::poly(const Chart& c, uint32_t max_degree, size_t terms) {
    RatPoly p = c.zero();
    for (size_t t = 0; t < terms; ++t) {
        Exponents e(c.dim(), 0);
        uint32_t budget = static_cast<uint32_t>(next(max_degree + 1));
        for (uint32_t k = 0; k < budget; ++k) e[next(c.dim())] += 1;
        p += RatPoly::monomial(c.vars, std::move(e), rational());
    }
    return p;
}

RatPoly FuzzRng::poly_without(const Chart& c, size_t skip, uint32_t max_degree, size_t terms) {
    if (c.dim() == 1) return c.constant(rational());
    RatPoly p = c.zero();
    for (size_t t = 0; t < terms; ++t) {
        Exponents e(c.dim(), 0);
        uint32_t budget = static_cast<uint32_t>(next(max_degree + 1));
        for (uint32_t k = 0; k < budget; ++k) {
            size_t i = next(c.dim() - 1);
            if (i >= skip) ++i;
            e[i] += 1;
        }
        p += RatPoly::monomial(c.vars, std::move(e), rational());
    }
    return p;
}

KForm FuzzRng::one_form(const Chart& c, uint32_t max_degree) {
    KForm f(c, 1);
    for (auto& comp : f.comps) comp = poly(c, max_degree, 2);
    return f;
}

KForm FuzzRng::two_form(const Chart& c, uint32_t max_degree) {
    KForm f(c, 2);
    for (auto& comp : f.comps) comp = poly(c, max_degree, 2);
    return f;
}

VectorField FuzzRng::vector_field(const Chart& c, uint32_t max_degree) {
    VectorField v = VectorField::zero(c);
    for (auto& comp : v.comps) comp = poly(c, max_degree, 2);
    return v;
}

Chart coordinate_chart(size_t n) {
    VarList coords;
    for (size_t i = 0; i < n; ++i) coords.push_back("x" + std::to_string(i));
    return Chart(std::move(coords));
}

KForm standard_symplectic(const Chart& c) {
    if (c.dim() % 2 != 0) throw GckError("standard symplectic form needs an even-dimensional chart");
    KForm w(c, 2);
    for (size_t i = 0; i + 1 < c.dim(); i += 2) {
        std::array<size_t, 2> idx{i, i + 1};
        w.set_component(idx, c.constant(Rational(1)));
    }
    return w;
}

EndoField standard_complex(const Chart& c) {
    if (c.dim() % 2 != 0) throw GckError("standard complex structure needs an even-dimensional chart");
    PolyMatrix m = PolyMatrix::zero(c.dim(), c.dim(), c.vars);
    for (size_t i = 0; i + 1 < c.dim(); i += 2) {
        m.at(i, i + 1) = c.constant(Rational(-1));
        m.at(i + 1, i) = c.constant(Rational(1));
    }
    return EndoField(c, std::move(m));
}

KForm fuzz_symplectic(const Chart& c, FuzzRng& rng, uint32_t degree, size_t shears) {
    KForm w = standard_symplectic(c);
    for (size_t k = 0; k < shears; ++k) {
        size_t i = rng.next(c.dim());
        std::vector<RatPoly> comps;
        for (size_t j = 0; j < c.dim(); ++j) comps.push_back(c.coordinate(j));
        comps[i] += rng.poly_without(c, i, degree, 2);
        PolyMap shear(c, c, std::move(comps));
        w = pullback(shear, w);
    }
    return w;
}

KForm fuzz_closed_two_form(const Chart& c, FuzzRng& rng, uint32_t degree) {
    KForm beta = exterior_d(rng.one_form(c, degree));
    KForm constant(c, 2);
    for (auto& comp : constant.comps) comp = c.constant(rng.rational());
    return beta + constant;
}

HitchinPair fuzz_hitchin_pair(const Chart& c, FuzzRng& rng, uint32_t degree) {
    KForm omega = fuzz_symplectic(c, rng, degree);
    KForm beta = fuzz_closed_two_form(c, rng, degree);
    EndoField a = commuting_endo(omega, beta);
    return HitchinPair(std::move(omega), std::move(a));
}

GeneralizedStructure fuzz_gcs(const Chart& c, FuzzRng& rng, uint32_t degree) {
    return hitchin_to_gcs(fuzz_hitchin_pair(c, rng, degree));
}

std::pair<KForm, EndoField> fuzz_commuting_pair(const Chart& c, FuzzRng& rng, uint32_t degree) {
    KForm omega = rng.two_form(c, degree);
    PolyMatrix p0 = sharp_bivector(invert_2form(standard_symplectic(c)));
    PolyMatrix b = p0 * sharp_form(omega);
    PolyMatrix m = PolyMatrix::zero(c.dim(), c.dim(), c.vars);
    RatPoly g0 = rng.poly(c, degree, 2), g1 = rng.poly(c, degree, 1), g2 = rng.poly(c, 1, 1);
    for (size_t i = 0; i < c.dim(); ++i) m.at(i, i) = g0;
    PolyMatrix b2 = b * b;
    for (size_t r = 0; r < c.dim(); ++r)
        for (size_t col = 0; col < c.dim(); ++col)
            m.at(r, col) += g1 * b.at(r, col) + g2 * b2.at(r, col);
    return {std::move(omega), EndoField(c, std::move(m))};
}

KForm constant_two_form(const Chart& c, FuzzRng& rng) {
    KForm f(c, 2);
    f.comps[rng.next(f.comps.size())] = c.constant(rng.nonzero_rational());
    return f;
}

Bivector non_poisson_bivector(const Chart& c3) {
    if (c3.dim() != 3) throw GckError("non_poisson_bivector expects a 3-dimensional chart");
    Bivector pi(c3);
    pi.set_component(0, 1, c3.constant(Rational(1)));
    pi.set_component(0, 2, c3.coordinate(0));
    return pi;
}

// ------------------------------------------------------------- fuzz suite

namespace {

struct PropertyTally {
    FuzzSummary& s;
    std::map<std::string, std::pair<size_t, size_t>> table;

    explicit PropertyTally(FuzzSummary& sum) : s(sum) {}

    void record(const std::string& property, bool ok, const std::string& detail) {
        auto& cell = table[property];
        ++cell.second;
        ++s.checks;
        if (ok) {
            ++cell.first;
            ++s.passes;
        } else {
            s.failures.push_back(property + " failed: " + detail);
        }
    }

    void flush() {
        for (auto& [k, v] : table) s.per_property.emplace_back(k, v);
    }
};

}  // namespace

FuzzSummary run_fuzz_suite(uint64_t seed, size_t dim, uint32_t degree, size_t count) {
    if (dim != 2 && dim != 3 && dim != 4) throw GckError("fuzz: dim must be 2, 3 or 4");
    if (degree > 2) throw GckError("fuzz: degree capped at 2");
    FuzzSummary summary;
    summary.seed = seed;
    summary.dim = dim;
    summary.degree = degree;
    summary.count = count;
    PropertyTally tally(summary);
    FuzzRng rng(seed);
    // Odd dimensions have no non-degenerate pipeline; use the even chart of
    // one dimension lower for the constructive half.
    const size_t even_dim = dim % 2 == 0 ? dim : dim - 1;
    Chart chart = coordinate_chart(even_dim);
    for (size_t i = 0; i < count; ++i) {
        std::string tag = "case " + std::to_string(i);
        HitchinPair pair = fuzz_hitchin_pair(chart, rng, degree);
        GeneralizedStructure s = hitchin_to_gcs(pair);
        bool valid_case = rng.chance(60);
        if (!valid_case) s = GeneralizedStructure(s.a, s.pi, s.sigma + constant_two_form(chart, rng));

        CheckReport direct = check_gcs(s);
        CheckReport oracle = integrability_report(s);
        tally.record("check_gcs <-> integrability oracle",
                     direct.certified() == oracle.certified(),
                     tag + " direct=" + direct.summary() + " oracle=" + oracle.summary());
        if (valid_case) {
            tally.record("valid pipeline certifies", direct.certified(), tag + " " + direct.summary());
            HitchinPair back = gcs_to_hitchin(s);
            bool round = back.omega == pair.omega && back.a == pair.a;
            GeneralizedStructure fwd = hitchin_to_gcs(back);
            round = round && fwd.a == s.a && fwd.pi == s.pi && fwd.sigma == s.sigma;
            tally.record("hitchin <-> gcs round trip", round, tag);
            tally.record("opposite preserves the verdict", check_gcs(opposite(s)).certified(), tag);
            KForm b = fuzz_closed_two_form(chart, rng, degree);
            tally.record("closed gauge preserves the verdict", check_gcs(gauge(s, b)).certified(),
                         tag);
            std::vector<Rational> origin(chart.dim(), Rational(0));
            tally.record("eigenspace certifies at the origin",
                         eigenspace_check(s, origin).certified(), tag);
            HitchinGroupoidCandidate cand = build_pair_hitchin_groupoid(pair);
            bool groupoid_ok = check_hitchin_groupoid(cand).certified() &&
                               check_ts_gholomorphic(cand).certified();
            tally.record("pair groupoid certifies", groupoid_ok, tag);
            HitchinGroupoidCandidate bent = cand;
            bent.sigma = cand.sigma + constant_two_form(chart, rng);
            bool flipped = !check_hitchin_groupoid(bent).certified() &&
                           !check_ts_gholomorphic(bent).certified() &&
                           !check_C3(s.pi, s.a, bent.sigma).certified();
            tally.record("sigma perturbation flips the groupoid legs", flipped, tag);
        }
        bool c2 = check_C2(s.pi, s.a).certified();
        bool im = check_im_form(PoissonAlgebroid(s.pi), s.a.m.transpose()).certified();
        tally.record("C2 <-> IM form for a*", c2 == im, tag);
        bool dirac = dirac_check(s.pi, s.a).certified();
        tally.record("C2 <-> dirac", c2 == dirac, tag);
    }
    tally.flush();
    return summary;
}

std::string fuzz_summary_text(const FuzzSummary& s) {
    std::ostringstream os;
    os << "fuzz seed=" << s.seed << " dim=" << s.dim << " degree=" << s.degree
       << " count=" << s.count << "\n";
    for (const auto& [name, cell] : s.per_property)
        os << "  " << (cell.first == cell.second ? "pass " : "FAIL ") << cell.first << "/"
           << cell.second << "  " << name << "\n";
    os << (s.all_passed() ? "all properties passed" : "PROPERTY FAILURES PRESENT") << " ("
       << s.passes << "/" << s.checks << ")\n";
    for (const auto& f : s.failures) os << "  ! " << f << "\n";
    return os.str();
}

}  // namespace gck
