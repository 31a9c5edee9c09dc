#include "gck/groupoid.hpp"

#include <array>

namespace gck {

static VarList suffixed(const VarList& base, std::initializer_list<const char*> suffixes) {
    VarList out;
    for (const char* suf : suffixes)
        for (const auto& c : base) out.push_back(c + std::string(suf));
    return out;
}

// Map picking whole coordinate blocks of size n from the source chart.
static PolyMap block_map(const Chart& src, const Chart& dst, size_t n,
                         std::initializer_list<size_t> blocks) {
    std::vector<RatPoly> comps;
    for (size_t b : blocks)
        for (size_t i = 0; i < n; ++i) comps.push_back(src.coordinate(b * n + i));
    return PolyMap(src, dst, std::move(comps));
}

PairGroupoid build_pair_groupoid(const Chart& base) {
    const size_t n = base.dim();
    Chart total(suffixed(base.coords, {"_1", "_2"}));
    Chart composable(suffixed(base.coords, {"_1", "_2", "_3"}));
    PolyMap t = block_map(total, base, n, {0});
    PolyMap s = block_map(total, base, n, {1});
    PolyMap m = block_map(composable, total, n, {0, 2});
    std::vector<RatPoly> unit_comps;
    for (size_t rep = 0; rep < 2; ++rep)
        for (size_t i = 0; i < n; ++i) unit_comps.push_back(base.coordinate(i));
    PolyMap unit(base, total, std::move(unit_comps));
    PolyMap inv = block_map(total, total, n, {1, 0});
    PolyMap pr1 = block_map(composable, total, n, {0, 1});
    PolyMap pr2 = block_map(composable, total, n, {1, 2});
    PairGroupoid g{base, total, composable, t, s, m, unit, inv, pr1, pr2};
    CheckReport axioms = groupoid_axioms(g);
    if (!axioms.certified()) throw GckError("pair groupoid construction: " + axioms.summary());
    return g;
}

static bool maps_equal(const PolyMap& a, const PolyMap& b) {
    return a.source == b.source && a.target == b.target && a.comps == b.comps;
}

CheckReport groupoid_axioms(const PairGroupoid& g) {
    const size_t n = g.base.dim();
    CheckReport rep("groupoid axioms");
    rep.add_fact("s∘pr1 = t∘pr2", maps_equal(compose(g.s, g.pr1), compose(g.t, g.pr2)));
    rep.add_fact("t∘m = t∘pr1", maps_equal(compose(g.t, g.m), compose(g.t, g.pr1)));
    rep.add_fact("s∘m = s∘pr2", maps_equal(compose(g.s, g.m), compose(g.s, g.pr2)));

    // Associativity on the chart of composable triples of arrows.
    Chart g3(suffixed(g.base.coords, {"_1", "_2", "_3", "_4"}));
    PolyMap p123 = block_map(g3, g.composable, n, {0, 1, 2});
    PolyMap p234 = block_map(g3, g.composable, n, {1, 2, 3});
    PolyMap m12 = compose(g.m, p123);  // (g h)
    PolyMap m23 = compose(g.m, p234);  // (h k)
    std::vector<RatPoly> left_comps = m12.comps;
    for (size_t i = 0; i < n; ++i) left_comps.push_back(g3.coordinate(3 * n + i));
    PolyMap left_triple(g3, g.composable, std::move(left_comps));
    std::vector<RatPoly> right_comps;
    for (size_t i = 0; i < n; ++i) right_comps.push_back(g3.coordinate(i));
    right_comps.insert(right_comps.end(), m23.comps.begin(), m23.comps.end());
    PolyMap right_triple(g3, g.composable, std::move(right_comps));
    rep.add_fact("(g h) k = g (h k)",
                 maps_equal(compose(g.m, left_triple), compose(g.m, right_triple)));

    // Unit laws.
    PolyMap lu = block_map(g.total, g.composable, n, {0, 0, 1});
    PolyMap ru = block_map(g.total, g.composable, n, {0, 1, 1});
    rep.add_fact("eps(t(g)) g = g", maps_equal(compose(g.m, lu), PolyMap::identity(g.total)));
    rep.add_fact("g eps(s(g)) = g", maps_equal(compose(g.m, ru), PolyMap::identity(g.total)));

    // Inversion laws.
    PolyMap gi = block_map(g.total, g.composable, n, {0, 1, 0});
    PolyMap ig = block_map(g.total, g.composable, n, {1, 0, 1});
    rep.add_fact("g i(g) = eps(t(g))", maps_equal(compose(g.m, gi), compose(g.unit, g.t)));
    rep.add_fact("i(g) g = eps(s(g))", maps_equal(compose(g.m, ig), compose(g.unit, g.s)));
    rep.add_fact("i∘i = id", maps_equal(compose(g.inv, g.inv), PolyMap::identity(g.total)));
    rep.add_fact("t∘i = s", maps_equal(compose(g.t, g.inv), g.s));
    rep.add_fact("s∘i = t", maps_equal(compose(g.s, g.inv), g.t));
    rep.add_fact("t∘eps = id", maps_equal(compose(g.t, g.unit), PolyMap::identity(g.base)));
    rep.add_fact("s∘eps = id", maps_equal(compose(g.s, g.unit), PolyMap::identity(g.base)));
    return rep;
}

// Transport of an n x n matrix over the base through a substitution map.
static PolyMatrix through(const PolyMatrix& m, const PolyMap& along) {
    return m.substitute(along.images(), along.source.vars);
}

HitchinGroupoidCandidate build_pair_hitchin_groupoid(const HitchinPair& pair) {
    PairGroupoid g = build_pair_groupoid(pair.chart());
    const size_t n = g.base.dim();
    KForm omega_S = pullback(g.s, pair.omega) - pullback(g.t, pair.omega);
    PolyMatrix a1 = through(pair.a.m, g.t);
    PolyMatrix a2 = through(pair.a.m, g.s);
    PolyMatrix j = PolyMatrix::zero(2 * n, 2 * n, g.total.vars);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) {
            j.at(r, c) = a1.at(r, c);
            j.at(n + r, n + c) = a2.at(r, c);
        }
    return HitchinGroupoidCandidate{g, pair, std::move(omega_S), EndoField(g.total, std::move(j)),
                                    twist(pair)};
}

static void add_form_defect(CheckReport& rep, const std::string& name, const KForm& f) {
    if (f.is_zero()) {
        rep.add_fact(name, true);
        return;
    }
    for (size_t i = 0; i < f.comps.size(); ++i)
        if (!f.comps[i].is_zero()) rep.add(name + " #" + std::to_string(i), f.comps[i]);
}

static void add_matrix_defect(CheckReport& rep, const std::string& name, const PolyMatrix& m) {
    if (m.is_zero()) {
        rep.add_fact(name, true);
        return;
    }
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero())
                rep.add(name + "[" + std::to_string(r) + "," + std::to_string(c) + "]", m.at(r, c));
}

CheckReport check_multiplicative_form(const PairGroupoid& g, const KForm& omega) {
    if (!(omega.chart == g.total)) throw GckError("multiplicative form: wrong chart");
    CheckReport rep("multiplicative form");
    KForm defect =
        pullback(g.m, omega) - pullback(g.pr1, omega) - pullback(g.pr2, omega);
    add_form_defect(rep, "(17) m*w - pr1*w - pr2*w", defect);
    return rep;
}

CheckReport check_multiplicative_endo(const PairGroupoid& g, const EndoField& J) {
    if (!(J.chart == g.total)) throw GckError("multiplicative endo: wrong chart");
    const size_t n = g.base.dim();
    CheckReport rep("multiplicative endo");
    auto block = [&](size_t br, size_t bc) {
        PolyMatrix b = PolyMatrix::zero(n, n, g.total.vars);
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) b.at(r, c) = J.m.at(br * n + r, bc * n + c);
        return b;
    };
    PolyMatrix j11 = block(0, 0), j12 = block(0, 1), j21 = block(1, 0), j22 = block(1, 1);
    // Tangency of (Jv, Jw) to the composable locus.
    add_matrix_defect(rep, "(tangency) J21∘pr1", through(j21, g.pr1));
    add_matrix_defect(rep, "(tangency) J12∘pr2", through(j12, g.pr2));
    add_matrix_defect(rep, "(tangency) J22∘pr1 - J11∘pr2",
                      through(j22, g.pr1) - through(j11, g.pr2));
    // dm-equivariance.
    add_matrix_defect(rep, "(dm) J11∘pr1 - J11∘m", through(j11, g.pr1) - through(j11, g.m));
    add_matrix_defect(rep, "(dm) J12∘pr1", through(j12, g.pr1));
    add_matrix_defect(rep, "(dm) J12∘m", through(j12, g.m));
    add_matrix_defect(rep, "(dm) J21∘m", through(j21, g.m));
    add_matrix_defect(rep, "(dm) J21∘pr2", through(j21, g.pr2));
    add_matrix_defect(rep, "(dm) J22∘pr2 - J22∘m", through(j22, g.pr2) - through(j22, g.m));
    return rep;
}

CheckReport check_hitchin_groupoid(const HitchinGroupoidCandidate& c) {
    CheckReport rep("hitchin groupoid");
    add_form_defect(rep, "(closed) d omega_S", exterior_d(c.omega_S));
    RatPoly det = sharp_form(c.omega_S).determinant();
    rep.add_fact("(nondegenerate) det omega_S#", det.is_constant() && !det.is_zero(),
                 "= " + det.to_string());
    rep.merge(check_multiplicative_form(c.g, c.omega_S));
    rep.merge(check_multiplicative_endo(c.g, c.J_S));
    add_matrix_defect(rep, "(commute) omega_S# J - J* omega_S#",
                      commutation_defect(c.omega_S, c.J_S));
    add_form_defect(rep, "(closed) d (omega_S)_J", exterior_d(sigma_a_form(c.J_S, c.omega_S)));
    KForm twist_defect = c.omega_S + a_star_omega(c.omega_S, c.J_S) -
                         pullback(c.g.t, c.sigma) + pullback(c.g.s, c.sigma);
    add_form_defect(rep, "(twist) w + J*w - t*sigma + s*sigma", twist_defect);
    return rep;
}

CheckReport check_ts_gholomorphic(const HitchinGroupoidCandidate& c) {
    const PairGroupoid& g = c.g;
    const size_t n = g.base.dim();
    CheckReport rep("(t,s) generalized holomorphic");

    GeneralizedStructure source = hitchin_to_gcs(HitchinPair(c.omega_S, c.J_S));

    // Base structure from the groupoid data: (a, pi, sigma) with the
    // candidate's sigma, and its opposite on the t-factor of the product.
    Bivector pi_base = invert_2form(c.base_pair.omega);
    PolyMatrix p_base = sharp_bivector(pi_base);
    PolyMatrix a_t = through(c.base_pair.a.m, g.t);
    PolyMatrix a_s = through(c.base_pair.a.m, g.s);
    PolyMatrix p_t = through(p_base, g.t);
    PolyMatrix p_s = through(p_base, g.s);
    PolyMatrix a_prod = PolyMatrix::zero(2 * n, 2 * n, g.total.vars);
    PolyMatrix p_prod = PolyMatrix::zero(2 * n, 2 * n, g.total.vars);
    for (size_t r = 0; r < n; ++r)
        for (size_t col = 0; col < n; ++col) {
            a_prod.at(r, col) = a_t.at(r, col);
            a_prod.at(n + r, n + col) = a_s.at(r, col);
            p_prod.at(r, col) = -p_t.at(r, col);  // opposite factor
            p_prod.at(n + r, n + col) = p_s.at(r, col);
        }
    KForm sigma_prod = pullback(g.s, c.sigma) - pullback(g.t, c.sigma);
    GeneralizedStructure product(EndoField(g.total, a_prod),
                                 bivector_from_sharp(g.total, p_prod), sigma_prod);

    std::vector<RatPoly> ts_comps = g.t.comps;
    ts_comps.insert(ts_comps.end(), g.s.comps.begin(), g.s.comps.end());
    PolyMap ts(g.total, g.total, std::move(ts_comps));
    rep.merge(check_gholomorphic(GHolMapCandidate(ts, source, product)));

    PolyMatrix dt = g.t.jacobian(), ds = g.s.jacobian();
    add_matrix_defect(rep, "(dt∘J - a∘dt)", dt * c.J_S.m - a_t * dt);
    add_matrix_defect(rep, "(ds∘J - a∘ds)", ds * c.J_S.m - a_s * ds);
    return rep;
}

HitchinGroupoidCandidate groupoid_gauge(const HitchinGroupoidCandidate& c, const KForm& B) {
    if (!(B.chart == c.g.base) || B.degree != 2)
        throw GckError("groupoid gauge: B must be a 2-form on the base");
    if (!exterior_d(B).is_zero()) throw NonClosedB("groupoid gauge: dB != 0");
    Bivector pi_S = invert_2form(c.omega_S);
    KForm sB_tB = pullback(c.g.s, B) - pullback(c.g.t, B);
    PolyMatrix j_new = c.J_S.m + sharp_bivector(pi_S) * sharp_form(sB_tB);
    GeneralizedStructure gauged = gauge(hitchin_to_gcs(c.base_pair), B);
    return HitchinGroupoidCandidate{c.g, HitchinPair(c.base_pair.omega, gauged.a), c.omega_S,
                                    EndoField(c.g.total, std::move(j_new)), gauged.sigma};
}

CheckReport isotropy_complex_check(const HitchinGroupoidCandidate& c,
                                   const std::vector<Rational>& x) {
    const PairGroupoid& g = c.g;
    const size_t n = g.base.dim();
    if (x.size() != n) throw GckError("isotropy check: point dimension mismatch");
    CheckReport rep("isotropy");
    std::vector<Rational> unit_pt;
    unit_pt.insert(unit_pt.end(), x.begin(), x.end());
    unit_pt.insert(unit_pt.end(), x.begin(), x.end());

    RatMatrix dt = eval_matrix(g.t.jacobian(), unit_pt);
    RatMatrix ds = eval_matrix(g.s.jacobian(), unit_pt);
    RatMatrix stacked = dt;
    stacked.insert(stacked.end(), ds.begin(), ds.end());
    auto isotropy_tangent = rat_kernel(stacked, 2 * n);
    rep.add_fact("isotropy tangent space is trivial", isotropy_tangent.empty(),
                 "(dim " + std::to_string(isotropy_tangent.size()) + ")");
    rep.add_fact("J preserves the isotropy tangent space", true, "(vacuous)");

    // Surrogate identity on Ker(ds)|_unit: the restricted operator squares to
    // -Id - pi# sigma# of the base at x.
    RatMatrix j = eval_matrix(c.J_S.m, unit_pt);
    bool preserves = true;
    for (size_t r = 0; r < n; ++r)
        for (size_t col = 0; col < n; ++col)
            if (!j[n + r][col].is_zero()) preserves = false;
    rep.add_fact("J preserves Ker(ds) at the unit", preserves);
    RatMatrix a_u(n, std::vector<Rational>(n));
    for (size_t r = 0; r < n; ++r)
        for (size_t col = 0; col < n; ++col) a_u[r][col] = j[r][col];
    RatMatrix w = eval_matrix(sharp_form(c.base_pair.omega), x);
    RatMatrix p = rat_inverse(w);
    RatMatrix s = eval_matrix(sharp_form(c.sigma), x);
    bool identity_holds = true;
    for (size_t r = 0; r < n; ++r)
        for (size_t col = 0; col < n; ++col) {
            Rational lhs(0);
            for (size_t k = 0; k < n; ++k) lhs += a_u[r][k] * a_u[k][col];
            Rational ps(0);
            for (size_t k = 0; k < n; ++k) ps += p[r][k] * s[k][col];
            Rational rhs = (r == col ? Rational(-1) : Rational(0)) - ps;
            if (!(lhs == rhs)) identity_holds = false;
        }
    rep.add_fact("a^2 = -Id - pi# sigma# at the unit", identity_holds);
    return rep;
}

VectorField right_invariant_extension(const PairGroupoid& g, const VectorField& v) {
    if (!(v.chart == g.base)) throw GckError("right invariant extension: wrong chart");
    std::vector<RatPoly> comps;
    for (const auto& p : v.comps) comps.push_back(g.t.pull_scalar(p));
    for (size_t i = 0; i < g.base.dim(); ++i) comps.push_back(g.total.zero());
    return VectorField(g.total, std::move(comps));
}

PolyMatrix im_form_of_multiplicative(const PairGroupoid& g, const KForm& omega_S) {
    const size_t n = g.base.dim();
    PolyMatrix u = PolyMatrix::zero(n, n, g.base.vars);
    for (size_t i = 0; i < n; ++i) {
        VectorField alpha = right_invariant_extension(g, VectorField::basis(g.base, i));
        for (size_t j = 0; j < n; ++j) {
            std::vector<RatPoly> diag_comps;
            for (size_t rep = 0; rep < 2; ++rep)
                for (size_t k = 0; k < n; ++k)
                    diag_comps.push_back(k == j ? g.total.constant(Rational(1)) : g.total.zero());
            VectorField diag(g.total, std::move(diag_comps));
            std::array<VectorField, 2> args{alpha, diag};
            u.at(j, i) = g.unit.pull_scalar(omega_S.apply(args));
        }
    }
    return u;
}

}  // namespace gck
