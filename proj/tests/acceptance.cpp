// Acceptance suite: one pass/fail line per criterion, spanning the
// equivalence theorems, round trips, unconditional identities, groupoid
// construction, gauge coherence, eigenspace checks and the CLI contract.
#include <array>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "gck/algebroid.hpp"
#include "gck/fuzz.hpp"
#include "gck/structfile.hpp"

using namespace gck;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << number << ". " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GeneralizedStructure perturb(const GeneralizedStructure& s, FuzzRng& rng, int mode) {
    const Chart& c = s.chart();
    switch (mode % 3) {
        case 0:
            return GeneralizedStructure(s.a, s.pi, s.sigma + constant_two_form(c, rng));
        case 1: {
            PolyMatrix m = s.a.m;
            m.at(0, 0) += c.coordinate(rng.next(c.dim()));
            return GeneralizedStructure(EndoField(c, m), s.pi, s.sigma);
        }
        default: {
            Bivector pi = s.pi;
            pi.set_component(0, 1, pi.component(0, 1) + c.constant(rng.nonzero_rational()));
            return GeneralizedStructure(s.a, pi, s.sigma);
        }
    }
}

void criterion_1() {
    bool ok = true;
    std::string detail;
    for (size_t dim : {2u, 4u}) {
        auto t0 = std::chrono::steady_clock::now();
        Chart c = coordinate_chart(dim);
        FuzzRng rng(101 + dim);
        size_t certified = 0, refuted = 0;
        for (int it = 0; it < 50; ++it) {
            GeneralizedStructure s = fuzz_gcs(c, rng, 2);
            if (it % 2 == 1) s = perturb(s, rng, it);
            bool direct = check_gcs(s).certified();
            bool oracle = integrability_report(s).certified();
            if (direct != oracle) {
                ok = false;
                detail = "disagreement at dim " + std::to_string(dim) + " case " +
                         std::to_string(it);
                break;
            }
            (direct ? certified : refuted) += 1;
        }
        double dt = seconds_since(t0);
        if (certified == 0 || refuted == 0) {
            ok = false;
            detail = "verdict classes not both present at dim " + std::to_string(dim);
        }
        if (dt >= 60.0) {
            ok = false;
            detail = "dim " + std::to_string(dim) + " took " + std::to_string(dt) + " s";
        }
        if (!ok) break;
        detail += (detail.empty() ? "" : "; ") + std::string("dim ") + std::to_string(dim) +
                  ": 50 cases in " + std::to_string(dt).substr(0, 5) + " s";
    }
    report(1, "condition checkers match the integrability oracle", ok, detail);
}

void criterion_2() {
    bool ok = true;
    std::string detail;
    size_t total = 0;
    for (size_t dim : {2u, 4u}) {
        Chart c = coordinate_chart(dim);
        FuzzRng rng(201 + dim);
        for (int it = 0; it < 25 && ok; ++it) {
            HitchinPair pair = fuzz_hitchin_pair(c, rng, 2);
            GeneralizedStructure s = hitchin_to_gcs(pair);
            if (!check_gcs(s).certified()) {
                ok = false;
                detail = "forward image not certified";
                break;
            }
            HitchinPair back = gcs_to_hitchin(s);
            if (!(back.omega == pair.omega && back.a == pair.a)) {
                ok = false;
                detail = "pair round trip failed";
                break;
            }
            GeneralizedStructure fwd = hitchin_to_gcs(back);
            if (!(fwd.a == s.a && fwd.pi == s.pi && fwd.sigma == s.sigma)) {
                ok = false;
                detail = "structure round trip failed";
                break;
            }
            ++total;
        }
    }
    report(2, "hitchin pair <-> non-degenerate structure bijection", ok,
           ok ? std::to_string(total) + " round trips" : detail);
}

void criterion_3() {
    bool ok = true;
    std::string detail;
    size_t total = 0, nonclosed = 0;
    for (size_t dim : {2u, 4u}) {
        Chart c = coordinate_chart(dim);
        FuzzRng rng(301 + dim);
        for (int it = 0; it < 50 && ok; ++it) {
            auto [omega, a] = fuzz_commuting_pair(c, rng, 2);
            if (!exterior_d(omega).is_zero()) ++nonclosed;
            if (!torsion_identity_defect(omega, a).certified()) {
                ok = false;
                detail = "nonzero torsion defect at dim " + std::to_string(dim) + " case " +
                         std::to_string(it);
            }
            ++total;
        }
    }
    if (ok && nonclosed == 0) {
        ok = false;
        detail = "no non-closed omega sampled";
    }
    report(3, "torsion identity for all commuting pairs", ok,
           ok ? std::to_string(total) + " pairs, " + std::to_string(nonclosed) + " non-closed"
              : detail);
}

void criterion_4() {
    bool ok = true;
    std::string detail;
    size_t koszul = 0, differential = 0;
    for (size_t dim : {2u, 3u, 4u}) {
        Chart c = coordinate_chart(dim);
        FuzzRng rng(401 + dim);
        for (int it = 0; it < 34 && ok; ++it) {
            KForm sigma = rng.two_form(c, 2);
            VectorField x = rng.vector_field(c, 2), y = rng.vector_field(c, 2),
                        z = rng.vector_field(c, 2);
            std::array<VectorField, 3> args{x, y, z};
            if (!(koszul_d2(sigma, x, y, z) == exterior_d(sigma).apply(args))) {
                ok = false;
                detail = "koszul disagreement";
                break;
            }
            ++koszul;
            KForm scalar(c, 0);
            scalar.comps[0] = interior2_scalar(sigma, x, y);
            KForm lhs = interior2(exterior_d(sigma), x, y);
            KForm rhs = lie_derivative(x, interior(y, sigma)) -
                        lie_derivative(y, interior(x, sigma)) + exterior_d(scalar) -
                        interior(lie_bracket(x, y), sigma);
            if (!(lhs == rhs)) {
                ok = false;
                detail = "differential identity disagreement";
                break;
            }
            ++differential;
        }
    }
    report(4, "Koszul expansion and the interior-derivative identity", ok,
           ok ? std::to_string(koszul) + " + " + std::to_string(differential) + " instances"
              : detail);
}

void criterion_5() {
    bool ok = true;
    std::string detail;
    size_t agree_cert = 0, agree_ref = 0;
    for (size_t dim : {2u, 4u}) {
        Chart c = coordinate_chart(dim);
        FuzzRng rng(501 + dim);
        for (int it = 0; it < 25 && ok; ++it) {
            GeneralizedStructure s = fuzz_gcs(c, rng, 2);
            EndoField a = s.a;
            if (it % 2 == 1) {
                PolyMatrix m = a.m;
                m.at(0, 0) += c.coordinate(0) * c.coordinate(dim - 1);
                a = EndoField(c, m);
            }
            bool c2 = check_C2(s.pi, a).certified();
            bool im = check_im_form(PoissonAlgebroid(s.pi), a.m.transpose()).certified();
            if (c2 != im) {
                ok = false;
                detail = "disagreement at dim " + std::to_string(dim);
                break;
            }
            (c2 ? agree_cert : agree_ref) += 1;
        }
    }
    if (ok && (agree_cert == 0 || agree_ref == 0)) {
        ok = false;
        detail = "both verdicts not exercised";
    }
    report(5, "C2 matches the IM-form equations for a*", ok,
           ok ? std::to_string(agree_cert) + " certified + " + std::to_string(agree_ref) +
                    " refuted, zero disagreements"
              : detail);
}

void criterion_6() {
    bool ok = true;
    std::string detail;
    size_t total = 0;
    for (size_t dim : {2u, 4u}) {
        Chart c = coordinate_chart(dim);
        FuzzRng rng(601 + dim);
        int cases = dim == 2 ? 12 : 8;
        for (int it = 0; it < cases && ok; ++it) {
            HitchinPair pair = fuzz_hitchin_pair(c, rng, dim == 4 ? 1 : 2);
            HitchinGroupoidCandidate cand = build_pair_hitchin_groupoid(pair);
            if (!check_multiplicative_form(cand.g, cand.omega_S).certified() ||
                !check_multiplicative_endo(cand.g, cand.J_S).certified() ||
                !check_hitchin_groupoid(cand).certified() ||
                !check_ts_gholomorphic(cand).certified()) {
                ok = false;
                detail = "built candidate failed at dim " + std::to_string(dim);
                break;
            }
            HitchinGroupoidCandidate broken = cand;
            broken.sigma = cand.sigma + constant_two_form(c, rng);
            Bivector pi = invert_2form(pair.omega);
            bool c3_flipped = !check_C3(pi, pair.a, broken.sigma).certified();
            CheckReport hg = check_hitchin_groupoid(broken);
            bool twist_flipped = !hg.certified();
            bool only_twist = true;
            for (const auto& n : hg.failed_names())
                if (n.find("twist") == std::string::npos) only_twist = false;
            CheckReport ts = check_ts_gholomorphic(broken);
            bool sigma_leg_flipped = !ts.certified();
            bool only_sigma_leg = true;
            for (const auto& n : ts.failed_names())
                if (n.find("sigma pullback") == std::string::npos) only_sigma_leg = false;
            if (!(c3_flipped && twist_flipped && only_twist && sigma_leg_flipped &&
                  only_sigma_leg)) {
                ok = false;
                detail = "perturbation did not flip all three legs together";
                break;
            }
            ++total;
        }
    }
    report(6, "pair groupoid carries the multiplicative structure", ok,
           ok ? std::to_string(total) + " bases with matched perturbation flips" : detail);
}

void criterion_7() {
    bool ok = true;
    std::string detail;
    size_t total = 0;
    for (size_t dim : {2u, 4u}) {
        Chart c = coordinate_chart(dim);
        FuzzRng rng(701 + dim);
        int cases = dim == 2 ? 12 : 8;
        for (int it = 0; it < cases && ok; ++it) {
            HitchinPair pair = fuzz_hitchin_pair(c, rng, 1);
            GeneralizedStructure s = hitchin_to_gcs(pair);
            KForm b = fuzz_closed_two_form(c, rng, 1);
            if (!check_gcs(gauge(s, b)).certified()) {
                ok = false;
                detail = "gauged structure refuted";
                break;
            }
            HitchinGroupoidCandidate cand = build_pair_hitchin_groupoid(pair);
            HitchinGroupoidCandidate gauged = groupoid_gauge(cand, b);
            if (!check_hitchin_groupoid(gauged).certified()) {
                ok = false;
                detail = "gauged groupoid refuted";
                break;
            }
            GeneralizedStructure same = gauge(s, KForm::zero(c, 2));
            if (!(same.a == s.a && same.pi == s.pi && same.sigma == s.sigma)) {
                ok = false;
                detail = "B = 0 is not the identity";
                break;
            }
            // B then -B restores the input byte-exactly after canonical print.
            GeneralizedStructure back = gauge(gauge(s, b), -b);
            StructureFile f1(c), f2(c);
            put_gcs(f1, "s", s);
            put_gcs(f2, "s", back);
            if (print_structure_file(f1) != print_structure_file(f2)) {
                ok = false;
                detail = "gauge by B then -B did not restore the input";
                break;
            }
            ++total;
        }
    }
    report(7, "gauge coherence on structures and groupoids", ok,
           ok ? std::to_string(total) + " gauged cases" : detail);
}

void criterion_8() {
    // Degenerate-pi family on R^6 (leaf symplectic x transverse complex) with
    // the sigma-blocks s, q free: satisfies (C1), (C2) and the pointwise
    // identities for every (s, q); non-constant (s, q) break the
    // differential equations.
    bool ok = true;
    std::string detail;
    Chart c = coordinate_chart(6);
    auto make_structure = [&](const RatPoly& s_coef, const RatPoly& q_coef) {
        PolyMatrix p = PolyMatrix::zero(6, 6, c.vars);
        p.at(0, 1) = c.parse("1");
        p.at(1, 0) = c.parse("-1");
        PolyMatrix am = PolyMatrix::zero(6, 6, c.vars);
        am.at(2, 4) = c.parse("-1");
        am.at(3, 5) = c.parse("1");
        am.at(4, 2) = c.parse("1");
        am.at(5, 3) = c.parse("-1");
        PolyMatrix sm = PolyMatrix::zero(6, 6, c.vars);
        sm.at(0, 1) = c.parse("1");
        sm.at(1, 0) = c.parse("-1");
        sm.at(2, 3) = -s_coef;
        sm.at(3, 2) = s_coef;
        sm.at(4, 5) = -s_coef;
        sm.at(5, 4) = s_coef;
        sm.at(2, 5) = q_coef;
        sm.at(3, 4) = q_coef;
        sm.at(4, 3) = -q_coef;
        sm.at(5, 2) = -q_coef;
        return GeneralizedStructure(EndoField(c, am), bivector_from_sharp(c, p),
                                    form_from_sharp(c, sm));
    };
    FuzzRng rng(801);
    size_t zero_branch = 0, nonzero_branch = 0, total = 0;
    for (int it = 0; it < 36 && ok; ++it) {
        RatPoly s_coef = it % 3 == 0 ? c.constant(rng.rational()) : rng.poly(c, 2, 2);
        RatPoly q_coef = it % 2 == 0 ? c.constant(rng.rational()) : rng.poly(c, 2, 2);
        GeneralizedStructure s = make_structure(s_coef, q_coef);
        if (!check_C1(s.pi).certified() || !check_C2(s.pi, s.a).certified()) {
            ok = false;
            detail = "family lost C1/C2";
            break;
        }
        std::vector<VectorField> xs;
        std::vector<KForm> xis;
        for (size_t i = 0; i < 6; ++i) {
            xs.push_back(VectorField::basis(c, i));
            std::array<size_t, 1> idx{i};
            xis.push_back(KForm::coordinate(c, idx));
        }
        xs.push_back(VectorField::basis(c, 2).scaled_by(c.coordinate(0)));
        std::array<size_t, 1> i4{4};
        xis.push_back(KForm::coordinate(c, i4).scaled_by(c.coordinate(0)));
        bool int2_zero = true, int3_zero = true, int4_zero = true;
        bool eq32_zero = true, eq42_zero = true;
        for (const auto& x : xs)
            for (const auto& xi : xis)
                if (!int2_defect(s, x, xi).is_zero()) int2_zero = false;
        for (size_t i = 0; i < xs.size(); ++i)
            for (size_t j = i + 1; j < xs.size(); ++j) {
                if (!int3_defect(s, xs[i], xs[j]).is_zero()) int3_zero = false;
                if (!int4_defect(s, xs[i], xs[j]).is_zero()) int4_zero = false;
                if (!eq32_defect(s, xs[i], xs[j]).is_zero()) eq32_zero = false;
                for (size_t k = j + 1; k < xs.size(); ++k)
                    if (!eq42_defect(s, xs[i], xs[j], xs[k]).is_zero()) eq42_zero = false;
            }
        if (!(int2_zero == int3_zero && int3_zero == eq32_zero && int4_zero == eq42_zero)) {
            ok = false;
            detail = "reduction equivalence broken at case " + std::to_string(it);
            break;
        }
        if (eq32_zero && eq42_zero) ++zero_branch;
        else ++nonzero_branch;
        ++total;
    }
    // Valid non-degenerate structures contribute the all-zero branch.
    for (size_t dim : {2u, 4u}) {
        Chart cc = coordinate_chart(dim);
        FuzzRng r2(802 + dim);
        for (int it = 0; it < 8 && ok; ++it) {
            GeneralizedStructure s = fuzz_gcs(cc, r2, 1);
            VectorField x = VectorField::basis(cc, 0).scaled_by(cc.coordinate(dim - 1));
            VectorField y = VectorField::basis(cc, dim - 1);
            std::array<size_t, 1> i0{0};
            KForm xi = KForm::coordinate(cc, i0).scaled_by(cc.coordinate(0));
            if (!int2_defect(s, x, xi).is_zero() || !int3_defect(s, x, y).is_zero() ||
                !int4_defect(s, x, y).is_zero() || !eq32_defect(s, x, y).is_zero()) {
                ok = false;
                detail = "valid structure produced a nonzero component defect";
                break;
            }
            ++zero_branch;
            ++total;
        }
    }
    if (ok && (zero_branch == 0 || nonzero_branch == 0)) {
        ok = false;
        detail = "both defect branches not exercised";
    }
    report(8, "component-equation reductions audit", ok,
           ok ? std::to_string(total) + " instances (" + std::to_string(zero_branch) +
                    " zero / " + std::to_string(nonzero_branch) + " nonzero)"
              : detail);
}

void criterion_9() {
    bool ok = true;
    std::string detail;
    size_t checks = 0;
    Chart c2 = coordinate_chart(2);
    std::vector<std::vector<Rational>> pts2 = {{Rational(0), Rational(0)},
                                               {Rational(1), Rational(0)},
                                               {Rational(-1), Rational(1)},
                                               {Rational(1, 2), Rational(-1, 2)},
                                               {Rational(2), Rational(-3)}};
    KForm w2 = standard_symplectic(c2);
    GeneralizedStructure sympl(EndoField::zero(c2), invert_2form(w2), -w2);
    GeneralizedStructure cplx(standard_complex(c2), Bivector::zero(c2), KForm::zero(c2, 2));
    for (const auto& p : pts2) {
        if (!eigenspace_check(sympl, p).certified() || !eigenspace_check(cplx, p).certified()) {
            ok = false;
            detail = "plane structure failed";
        }
        checks += 2;
    }
    Chart c4 = coordinate_chart(4);
    FuzzRng rng(901);
    GeneralizedStructure fuzzed = fuzz_gcs(c4, rng, 1);
    std::vector<std::vector<Rational>> pts4 = {
        {Rational(0), Rational(0), Rational(0), Rational(0)},
        {Rational(1), Rational(0), Rational(-1), Rational(0)},
        {Rational(1, 2), Rational(1), Rational(0), Rational(2)},
        {Rational(-1), Rational(-1), Rational(1), Rational(1)},
        {Rational(2), Rational(1, 2), Rational(-1, 2), Rational(0)}};
    for (const auto& p : pts4) {
        if (!eigenspace_check(fuzzed, p).certified()) {
            ok = false;
            detail = "fuzzed 4d structure failed";
        }
        ++checks;
    }
    report(9, "pointwise +i eigenspace checks", ok,
           ok ? std::to_string(checks) + " point checks" : detail);
}

void criterion_10() {
    const char* bin = std::getenv("GCK_BIN");
    const char* fixtures = std::getenv("GCK_FIXTURES");
    if (!bin || !fixtures) {
        report(10, "CLI contract", false, "set GCK_BIN and GCK_FIXTURES");
        return;
    }
    bool ok = true;
    std::string detail;
    auto run = [&](const std::string& args) {
        std::string cmd = std::string(bin) + " " + args + " > /dev/null 2>&1";
        int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };
    std::string fx(fixtures);
    struct Case {
        std::string args;
        int expect;
    };
    std::vector<Case> cases = {
        {"check " + fx + "/symplectic_r2.gck --target symplectic_r2 --suite gcs", 0},
        {"check " + fx + "/hitchin_id_r2.gck --target hitchin_id_r2 --suite groupoid", 0},
        {"check " + fx + "/broken_sigma.gck --target broken_sigma --suite gcs", 1},
        {"check " + fx + "/missing_tensor.gck --target incomplete --suite gcs", 2},
        {"check " + fx + "/bad_syntax.gck --target x --suite gcs", 2},
        {"convert " + fx + "/complex_r2.gck --target complex_r2 --op gcs-to-hitchin", 1},
    };
    for (const auto& cs : cases) {
        int got = run(cs.args);
        if (got != cs.expect) {
            ok = false;
            detail = "expected exit " + std::to_string(cs.expect) + ", got " +
                     std::to_string(got) + " for: " + cs.args;
            break;
        }
    }
    if (ok) {
        // Canonical print is a fixed point of parse∘print.
        Chart c({"x", "y"});
        FuzzRng rng(1001);
        HitchinPair pair = fuzz_hitchin_pair(c, rng, 1);
        StructureFile f(c);
        put_hitchin(f, "h", pair);
        put_gcs(f, "g", hitchin_to_gcs(pair));
        std::string once = print_structure_file(f);
        std::string twice = print_structure_file(parse_structure_file(once));
        if (once != twice) {
            ok = false;
            detail = "canonical round trip is not byte-stable";
        }
    }
    report(10, "CLI contract and byte-stable round trip", ok, detail);
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criteria FAILED")
              << " in " << seconds_since(t0) << " s" << std::endl;
    return failures == 0 ? 0 : 1;
}
