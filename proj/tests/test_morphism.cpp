#include <doctest.h>

#include <array>

#include "gck/fuzz.hpp"
#include "gck/morphism.hpp"

using namespace gck;

namespace {

KForm two(const Chart& c, size_t i, size_t j, const std::string& coeff = "1") {
    std::array<size_t, 2> idx{i, j};
    return KForm::coordinate(c, idx).scaled_by(c.parse(coeff));
}

GeneralizedStructure symplectic_structure(const Chart& c) {
    KForm w = standard_symplectic(c);
    return GeneralizedStructure(EndoField::zero(c), invert_2form(w), -w);
}

GeneralizedStructure complex_structure(const Chart& c) {
    return GeneralizedStructure(standard_complex(c), Bivector::zero(c), KForm::zero(c, 2));
}

}  // namespace

TEST_CASE("identity map is generalized holomorphic") {
    Chart c = coordinate_chart(2);
    GeneralizedStructure s = symplectic_structure(c);
    GHolMapCandidate cand(PolyMap::identity(c), s, s);
    CHECK(check_gholomorphic(cand).certified());
}

TEST_CASE("symplectic leaf inclusion") {
    Chart plane({"x", "y"}), space({"x", "y", "z"});
    PolyMap incl(plane, space, {plane.parse("x"), plane.parse("y"), plane.zero()});
    Bivector pi2(space);
    pi2.set_component(0, 1, space.parse("1"));
    KForm sigma2 = two(space, 0, 1, "-1");
    GeneralizedStructure target(EndoField::zero(space), pi2, sigma2);
    Bivector pi1(plane);
    pi1.set_component(0, 1, plane.parse("1"));
    GeneralizedStructure source(EndoField::zero(plane), pi1, pullback(incl, sigma2));
    CHECK(check_gholomorphic(GHolMapCandidate(incl, source, target)).certified());
}

TEST_CASE("antiholomorphic map refutes the intertwining leg") {
    Chart c({"x", "y"});
    GeneralizedStructure cplx = complex_structure(c);
    PolyMap conj(c, c, {c.parse("x"), c.parse("-y")});
    CheckReport rep = check_gholomorphic(GHolMapCandidate(conj, cplx, cplx));
    CHECK_FALSE(rep.certified());
    bool intertwine_named = false;
    for (const auto& n : rep.failed_names())
        if (n.find("intertwine") != std::string::npos) intertwine_named = true;
    CHECK(intertwine_named);
}

TEST_CASE("composition of certified maps is certified") {
    Chart c = coordinate_chart(2);
    FuzzRng rng(14);
    GeneralizedStructure s = fuzz_gcs(c, rng, 1);
    // Shear diffeomorphisms transport the structure; both legs certify and
    // so does the composite.
    std::vector<RatPoly> comps = {c.parse("x0 + x1^2"), c.parse("x1")};
    PolyMap f(c, c, comps);
    // Transport s along the inverse shear so that f is structure-preserving.
    PolyMap finv(c, c, {c.parse("x0 - x1^2"), c.parse("x1")});
    // Pull the pair (omega, a) back along finv.
    HitchinPair pair = gcs_to_hitchin(s);
    KForm omega_t = pullback(finv, pair.omega);
    PolyMatrix jf = f.jacobian();
    // a transported: df ∘ a ∘ df^{-1} composed with f.
    PolyMatrix a_t = jf * pair.a.m * finv.jacobian().substitute(f.images(), c.vars);
    a_t = a_t.substitute(finv.images(), c.vars);
    GeneralizedStructure target = hitchin_to_gcs(HitchinPair(omega_t, EndoField(c, a_t)));
    GHolMapCandidate leg(f, s, target);
    CHECK(check_gholomorphic(leg).certified());
    GHolMapCandidate composite(compose(f, f), s, [&] {
        KForm omega_tt = pullback(finv, omega_t);
        PolyMatrix a_tt = jf * a_t * finv.jacobian().substitute(f.images(), c.vars);
        a_tt = a_tt.substitute(finv.images(), c.vars);
        return hitchin_to_gcs(HitchinPair(omega_tt, EndoField(c, a_tt)));
    }());
    CHECK(check_gholomorphic(composite).certified());
}

TEST_CASE("hitchin realization") {
    Chart c = coordinate_chart(2);
    FuzzRng rng(15);
    HitchinPair pair = fuzz_hitchin_pair(c, rng, 1);
    GeneralizedStructure s = hitchin_to_gcs(pair);
    CHECK(check_hitchin_realization(PolyMap::identity(c), pair, s).certified());
    // A constant map into a structure with nonzero sigma fails the pullback leg.
    GeneralizedStructure target(EndoField::zero(c), Bivector::zero(c), two(c, 0, 1));
    PolyMap constant(c, c, {c.zero(), c.zero()});
    CheckReport rep = check_hitchin_realization(constant, pair, target);
    CHECK_FALSE(rep.certified());
}

TEST_CASE("fiber complex check") {
    // Projection R^4 -> R^2 with the transverse complex block acting on the
    // fiber directions 2,3.
    Chart c4 = coordinate_chart(4), c2({"u", "v"});
    PolyMap proj(c4, c2, {c4.parse("x0"), c4.parse("x1")});
    PolyMatrix am = PolyMatrix::zero(4, 4, c4.vars);
    am.at(2, 3) = c4.parse("-1");
    am.at(3, 2) = c4.parse("1");
    GeneralizedStructure src(EndoField(c4, am), Bivector::zero(c4), KForm::zero(c4, 2));
    GeneralizedStructure dst(EndoField::zero(c2), Bivector::zero(c2), KForm::zero(c2, 2));
    GHolMapCandidate cand(proj, src, dst);
    std::vector<Rational> origin(4, Rational(0));
    CHECK(fiber_complex_check(cand, origin).certified());

    // Identity: empty kernel, vacuous certificate.
    Chart c = coordinate_chart(2);
    GeneralizedStructure s2 = symplectic_structure(c);
    GHolMapCandidate ident(PolyMap::identity(c), s2, s2);
    CHECK(fiber_complex_check(ident, {Rational(0), Rational(0)}).certified());

    // a1 failing to preserve the kernel is refuted.
    PolyMatrix bad = PolyMatrix::zero(4, 4, c4.vars);
    bad.at(0, 2) = c4.parse("1");
    bad.at(3, 2) = c4.parse("1");
    bad.at(2, 3) = c4.parse("-1");
    GeneralizedStructure src_bad(EndoField(c4, bad), Bivector::zero(c4), KForm::zero(c4, 2));
    CHECK_FALSE(fiber_complex_check(GHolMapCandidate(proj, src_bad, dst), origin).certified());

    // Non-regular point.
    PolyMap fold(c4, c2, {c4.parse("x0^2"), c4.parse("x1")});
    CHECK_THROWS_AS(fiber_complex_check(GHolMapCandidate(fold, src, dst), origin),
                    NotRegularPoint);
}

TEST_CASE("moment map defect") {
    // Non-degenerate omega: rho = omega#^{-1} mu* alpha always certifies.
    Chart c = coordinate_chart(2), target({"u", "v"});
    KForm omega = standard_symplectic(c);
    PolyMap mu(c, target, {c.parse("x0"), c.parse("x1")});
    Bivector pi2 = Bivector::zero(target);  // every covector is isotropy
    std::vector<Rational> point{Rational(1), Rational(2)};
    std::vector<Rational> alpha{Rational(3), Rational(-1, 2)};
    // Solve i_rho omega = mu* alpha at the point by the inverse matrix.
    RatMatrix w = eval_matrix(sharp_form(omega), point);
    RatMatrix winv = rat_inverse(w);
    RatMatrix jac = eval_matrix(mu.jacobian(), point);
    std::vector<Rational> pullback_alpha(2, Rational(0));
    for (size_t i = 0; i < 2; ++i)
        for (size_t t = 0; t < 2; ++t) pullback_alpha[i] += jac[t][i] * alpha[t];
    std::vector<Rational> rho_val = rat_mat_vec(winv, pullback_alpha);
    VectorField rho(c, {c.constant(rho_val[0]), c.constant(rho_val[1])});
    CHECK(moment_map_defect(mu, omega, pi2, point, alpha, rho).certified());
    // alpha = 0 with rho = 0 certifies.
    CHECK(moment_map_defect(mu, omega, pi2, point, {Rational(0), Rational(0)},
                            VectorField::zero(c))
              .certified());
    // A wrong candidate leaves a nonzero defect.
    VectorField wrong(c, {c.constant(rho_val[0] + Rational(1)), c.constant(rho_val[1])});
    CHECK_FALSE(moment_map_defect(mu, omega, pi2, point, alpha, wrong).certified());
    // alpha outside the isotropy kernel is rejected.
    Bivector pi_full(target);
    pi_full.set_component(0, 1, target.parse("1"));
    CHECK_THROWS_AS(moment_map_defect(mu, omega, pi_full, point, alpha, rho),
                    NotInIsotropyKernel);
}

TEST_CASE("groupoid projections as hitchin realizations") {
    // For a zero-twist base the s-projection of the pair groupoid is a
    // Hitchin realization of the base structure; the t-projection realizes
    // the opposite structure (t is the anti-Poisson projection under this
    // orientation).
    Chart c4 = coordinate_chart(4);
    KForm w4 = standard_symplectic(c4);
    // Zero-twist complex partner of the standard form.
    PolyMatrix am = PolyMatrix::zero(4, 4, c4.vars);
    am.at(0, 2) = c4.parse("-1");
    am.at(1, 3) = c4.parse("1");
    am.at(2, 0) = c4.parse("1");
    am.at(3, 1) = c4.parse("-1");
    HitchinPair base(w4, EndoField(c4, am));
    REQUIRE(twist(base).is_zero());
    HitchinGroupoidCandidate cand = build_pair_hitchin_groupoid(base);
    HitchinPair sigma_pair(cand.omega_S, cand.J_S);
    GeneralizedStructure base_s = hitchin_to_gcs(base);
    CHECK(check_hitchin_realization(cand.g.s, sigma_pair, base_s).certified());
    CHECK(check_hitchin_realization(cand.g.t, sigma_pair, opposite(base_s)).certified());
    CHECK_FALSE(check_hitchin_realization(cand.g.t, sigma_pair, base_s).certified());
}
