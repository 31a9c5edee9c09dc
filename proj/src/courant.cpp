#include "gck/courant.hpp"

#include <array>

namespace gck {

GSection::GSection(VectorField v, KForm f) : vec(std::move(v)), form(std::move(f)) {
    if (!(vec.chart == form.chart)) throw GckError("section: chart mismatch");
    if (form.degree != 1) throw GckError("section: form part must be a 1-form");
}

GSection GSection::zero(const Chart& c) {
    return GSection(VectorField::zero(c), KForm::zero(c, 1));
}

GSection GSection::from_vector(const VectorField& v) {
    return GSection(v, KForm::zero(v.chart, 1));
}

GSection GSection::from_form(const KForm& f) {
    return GSection(VectorField::zero(f.chart), f);
}

GSection operator+(const GSection& a, const GSection& b) {
    return GSection(a.vec + b.vec, a.form + b.form);
}

GSection operator-(const GSection& a, const GSection& b) {
    return GSection(a.vec - b.vec, a.form - b.form);
}

GSection GSection::scaled_by(const RatPoly& f) const {
    return GSection(vec.scaled_by(f), form.scaled_by(f));
}

GeneralizedStructure::GeneralizedStructure(EndoField a_, Bivector pi_, KForm sigma_)
    : a(std::move(a_)), pi(std::move(pi_)), sigma(std::move(sigma_)) {
    if (!(a.chart == pi.chart) || !(a.chart == sigma.chart))
        throw GckError("structure: chart mismatch");
    if (sigma.degree != 2) throw GckError("structure: sigma must be a 2-form");
}

static PolyMatrix block2(const PolyMatrix& tl, const PolyMatrix& tr, const PolyMatrix& bl,
                         const PolyMatrix& br, const VarListPtr& vars) {
    const size_t n = tl.rows();
    PolyMatrix m = PolyMatrix::zero(2 * n, 2 * n, vars);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) {
            m.at(r, c) = tl.at(r, c);
            m.at(r, n + c) = tr.at(r, c);
            m.at(n + r, c) = bl.at(r, c);
            m.at(n + r, n + c) = br.at(r, c);
        }
    return m;
}

PolyMatrix GeneralizedStructure::block_matrix() const {
    const Chart& c = chart();
    return block2(a.m, pi_sharp(), sigma_sharp(), -a.m.transpose(), c.vars);
}

RatPoly pairing(const GSection& alpha, const GSection& beta) {
    if (!(alpha.chart() == beta.chart())) throw GckError("pairing: chart mismatch");
    const Chart& c = alpha.chart();
    RatPoly s = c.zero();
    for (size_t i = 0; i < c.dim(); ++i) {
        s += alpha.form.comps[i] * beta.vec.comps[i];
        s += beta.form.comps[i] * alpha.vec.comps[i];
    }
    return s;
}

static KForm d_scalar(const Chart& c, const RatPoly& f) {
    KForm f0(c, 0);
    f0.comps[0] = f;
    return exterior_d(f0);
}

GSection courant_bracket(const GSection& alpha, const GSection& beta) {
    if (!(alpha.chart() == beta.chart())) throw GckError("courant bracket: chart mismatch");
    const Chart& c = alpha.chart();
    VectorField vec = lie_bracket(alpha.vec, beta.vec);
    RatPoly ix_eta = interior(alpha.vec, beta.form).comps[0];
    RatPoly iy_xi = interior(beta.vec, alpha.form).comps[0];
    KForm form = lie_derivative(alpha.vec, beta.form) - lie_derivative(beta.vec, alpha.form) -
                 d_scalar(c, ix_eta - iy_xi).scaled_by(c.constant(Rational(1, 2)));
    return GSection(std::move(vec), std::move(form));
}

GSection apply_J(const GeneralizedStructure& s, const GSection& alpha) {
    if (!(s.chart() == alpha.chart())) throw GckError("apply_J: chart mismatch");
    const Chart& c = s.chart();
    VectorField vec = s.a.apply(alpha.vec) + sharp_apply(c, s.pi_sharp(), alpha.form);
    KForm form = flat_apply(c, s.sigma_sharp(), alpha.vec) - s.a.coapply(alpha.form);
    return GSection(std::move(vec), std::move(form));
}

GSection integrability_defect(const GeneralizedStructure& s, const GSection& alpha,
                              const GSection& beta) {
    GSection ja = apply_J(s, alpha), jb = apply_J(s, beta);
    GSection inner = courant_bracket(ja, beta) + courant_bracket(alpha, jb);
    return courant_bracket(ja, jb) - courant_bracket(alpha, beta) - apply_J(s, inner);
}

KForm pi_bracket(const Bivector& pi, const KForm& xi, const KForm& eta) {
    if (!(pi.chart == xi.chart) || !(pi.chart == eta.chart))
        throw GckError("pi bracket: chart mismatch");
    const Chart& c = pi.chart;
    PolyMatrix p = sharp_bivector(pi);
    VectorField px = sharp_apply(c, p, xi), pe = sharp_apply(c, p, eta);
    return lie_derivative(px, eta) - lie_derivative(pe, xi) - d_scalar(c, pi.apply(xi, eta));
}

// --- report helpers --------------------------------------------------------

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

static void add_vector_defect(CheckReport& rep, const std::string& name, const VectorField& v) {
    if (v.is_zero()) {
        rep.add_fact(name, true);
        return;
    }
    for (size_t i = 0; i < v.comps.size(); ++i)
        if (!v.comps[i].is_zero()) rep.add(name + " d/" + v.chart.coords[i], v.comps[i]);
}

static void add_form_defect(CheckReport& rep, const std::string& name, const KForm& f) {
    if (f.is_zero()) {
        rep.add_fact(name, true);
        return;
    }
    for (size_t i = 0; i < f.comps.size(); ++i)
        if (!f.comps[i].is_zero()) rep.add(name + " #" + std::to_string(i), f.comps[i]);
}

static KForm coord_1form(const Chart& c, size_t i) {
    std::array<size_t, 1> idx{i};
    return KForm::coordinate(c, idx);
}

// --- condition checkers ----------------------------------------------------

CheckReport check_C1(const Bivector& pi) {
    const Chart& c = pi.chart;
    CheckReport rep("C1");
    PolyMatrix p = sharp_bivector(pi);
    for (size_t i = 0; i < c.dim(); ++i) {
        for (size_t j = i + 1; j < c.dim(); ++j) {
            KForm xi = coord_1form(c, i), eta = coord_1form(c, j);
            VectorField lhs = sharp_apply(c, p, pi_bracket(pi, xi, eta));
            VectorField rhs = lie_bracket(sharp_apply(c, p, xi), sharp_apply(c, p, eta));
            add_vector_defect(rep, "(C1)[d" + c.coords[i] + ",d" + c.coords[j] + "]", lhs - rhs);
        }
    }
    if (c.dim() < 2) rep.add_fact("(C1)", true, "(no coordinate pairs)");
    return rep;
}

CheckReport check_C2(const Bivector& pi, const EndoField& a) {
    if (!(pi.chart == a.chart)) throw GckError("check_C2: chart mismatch");
    const Chart& c = pi.chart;
    CheckReport rep("C2");
    PolyMatrix p = sharp_bivector(pi);
    add_matrix_defect(rep, "(2.1)", a.m * p - p * a.m.transpose());
    for (size_t i = 0; i < c.dim(); ++i) {
        for (size_t j = 0; j < c.dim(); ++j) {
            KForm xi = coord_1form(c, i), eta = coord_1form(c, j);
            KForm lhs = a.coapply(pi_bracket(pi, xi, eta));
            KForm a_eta = a.coapply(eta), a_xi = a.coapply(xi);
            KForm rhs = lie_derivative(sharp_apply(c, p, xi), a_eta) -
                        lie_derivative(sharp_apply(c, p, eta), a_xi) -
                        d_scalar(c, pi.apply(a_xi, eta));
            add_form_defect(rep, "(2.2)[d" + c.coords[i] + ",d" + c.coords[j] + "]", lhs - rhs);
        }
    }
    return rep;
}

CheckReport check_C3(const Bivector& pi, const EndoField& a, const KForm& sigma) {
    if (!(pi.chart == a.chart) || !(pi.chart == sigma.chart))
        throw GckError("check_C3: chart mismatch");
    const Chart& c = pi.chart;
    CheckReport rep("C3");
    PolyMatrix p = sharp_bivector(pi);
    PolyMatrix s = sharp_form(sigma);
    add_matrix_defect(rep, "(3.1)",
                      a.m * a.m + p * s + PolyMatrix::identity(c.dim(), c.vars));
    KForm dsigma = exterior_d(sigma);
    for (size_t i = 0; i < c.dim(); ++i) {
        for (size_t j = i + 1; j < c.dim(); ++j) {
            VectorField lhs = nijenhuis_pair(a, i, j);
            KForm contracted = interior2(dsigma, VectorField::basis(c, i), VectorField::basis(c, j));
            VectorField rhs = sharp_apply(c, p, contracted);
            add_vector_defect(rep, "(3.2)[d/" + c.coords[i] + ",d/" + c.coords[j] + "]", lhs - rhs);
        }
    }
    if (c.dim() < 2) rep.add_fact("(3.2)", true, "(no coordinate pairs)");
    return rep;
}

KForm sigma_a_form(const EndoField& a, const KForm& sigma) {
    if (!(a.chart == sigma.chart)) throw GckError("sigma_a: chart mismatch");
    if (sigma.degree != 2) throw GckError("sigma_a: needs a 2-form");
    const Chart& c = a.chart;
    KForm out(c, 2);
    for (size_t i = 0; i < c.dim(); ++i)
        for (size_t j = i + 1; j < c.dim(); ++j) {
            std::array<VectorField, 2> args{a.apply(VectorField::basis(c, i)),
                                            VectorField::basis(c, j)};
            std::array<size_t, 2> idx{i, j};
            out.set_component(idx, sigma.apply(args));
        }
    return out;
}

CheckReport check_C4(const EndoField& a, const KForm& sigma) {
    if (!(a.chart == sigma.chart)) throw GckError("check_C4: chart mismatch");
    const Chart& c = a.chart;
    CheckReport rep("C4");
    PolyMatrix s = sharp_form(sigma);
    add_matrix_defect(rep, "(4.1)", a.m.transpose() * s - s * a.m);
    KForm dsigma = exterior_d(sigma);
    KForm dsigma_a = exterior_d(sigma_a_form(a, sigma));
    bool any_triple = false;
    for (size_t i = 0; i < c.dim(); ++i)
        for (size_t j = i + 1; j < c.dim(); ++j)
            for (size_t k = j + 1; k < c.dim(); ++k) {
                any_triple = true;
                VectorField X = VectorField::basis(c, i), Y = VectorField::basis(c, j),
                            Z = VectorField::basis(c, k);
                std::array<VectorField, 3> lhs_args{X, Y, Z};
                RatPoly lhs = dsigma_a.apply(lhs_args);
                std::array<VectorField, 3> r1{a.apply(X), Y, Z};
                std::array<VectorField, 3> r2{X, a.apply(Y), Z};
                std::array<VectorField, 3> r3{X, Y, a.apply(Z)};
                RatPoly rhs = dsigma.apply(r1) + dsigma.apply(r2) + dsigma.apply(r3);
                rep.add("(4.2)[d/" + c.coords[i] + ",d/" + c.coords[j] + ",d/" + c.coords[k] + "]",
                        lhs - rhs);
            }
    if (!any_triple) rep.add_fact("(4.2)", true, "(no coordinate triples)");
    return rep;
}

CheckReport check_gcs(const GeneralizedStructure& s) {
    CheckReport rep("gcs");
    rep.merge(check_C1(s.pi));
    rep.merge(check_C2(s.pi, s.a));
    rep.merge(check_C3(s.pi, s.a, s.sigma));
    rep.merge(check_C4(s.a, s.sigma));
    return rep;
}

GeneralizedStructure opposite(const GeneralizedStructure& s) {
    return GeneralizedStructure(s.a, -s.pi, -s.sigma);
}

GeneralizedStructure gauge(const GeneralizedStructure& s, const KForm& B) {
    if (!(s.chart() == B.chart) || B.degree != 2) throw GckError("gauge: bad B");
    const Chart& c = s.chart();
    PolyMatrix bm = sharp_form(B);
    PolyMatrix p = s.pi_sharp();
    PolyMatrix a_new = s.a.m + p * bm;
    PolyMatrix s_new = s.sigma_sharp() - s.a.m.transpose() * bm - bm * s.a.m - bm * p * bm;
    return GeneralizedStructure(EndoField(c, a_new), s.pi, form_from_sharp(c, s_new));
}

PolyMatrix gauge_conjugated_matrix(const GeneralizedStructure& s, const KForm& B) {
    const Chart& c = s.chart();
    const size_t n = c.dim();
    PolyMatrix bm = sharp_form(B);
    PolyMatrix id = PolyMatrix::identity(n, c.vars);
    PolyMatrix zero = PolyMatrix::zero(n, n, c.vars);
    PolyMatrix plus = block2(id, zero, bm, id, c.vars);
    PolyMatrix minus = block2(id, zero, -bm, id, c.vars);
    return minus * s.block_matrix() * plus;
}

CheckReport dirac_check(const Bivector& pi, const EndoField& a) {
    if (!(pi.chart == a.chart)) throw GckError("dirac_check: chart mismatch");
    const Chart& c = pi.chart;
    CheckReport rep("dirac");
    PolyMatrix p = sharp_bivector(pi);
    auto gen = [&](size_t i) {
        KForm xi = coord_1form(c, i);
        return GSection(sharp_apply(c, p, xi), a.coapply(xi));
    };
    std::vector<GSection> gens;
    for (size_t i = 0; i < c.dim(); ++i) gens.push_back(gen(i));
    for (size_t i = 0; i < c.dim(); ++i)
        for (size_t j = i; j < c.dim(); ++j)
            rep.add("(iso)[d" + c.coords[i] + ",d" + c.coords[j] + "]", pairing(gens[i], gens[j]));
    for (size_t i = 0; i < c.dim(); ++i)
        for (size_t j = i + 1; j < c.dim(); ++j) {
            GSection br = courant_bracket(gens[i], gens[j]);
            for (size_t k = 0; k < c.dim(); ++k)
                rep.add("(inv)[d" + c.coords[i] + ",d" + c.coords[j] + ";d" + c.coords[k] + "]",
                        pairing(br, gens[k]));
        }
    return rep;
}

CheckReport eigenspace_check(const GeneralizedStructure& s, const std::vector<Rational>& point) {
    const Chart& c = s.chart();
    const size_t n = c.dim();
    if (point.size() != n) throw GckError("eigenspace_check: point dimension mismatch");
    CheckReport rep("eigenspace");
    PolyMatrix blocks = s.block_matrix();
    GaussMatrix j(2 * n, std::vector<GaussRat>(2 * n));
    for (size_t r = 0; r < 2 * n; ++r)
        for (size_t col = 0; col < 2 * n; ++col) j[r][col] = GaussRat(blocks.at(r, col).eval(point));
    const GaussRat img = GaussRat::i();
    // Columns v_k = e_k - i J e_k span the candidate +i eigenspace.
    GaussMatrix v(2 * n, std::vector<GaussRat>(2 * n));
    for (size_t k = 0; k < 2 * n; ++k)
        for (size_t r = 0; r < 2 * n; ++r) {
            GaussRat e_rk = (r == k) ? GaussRat(Rational(1)) : GaussRat();
            v[r][k] = e_rk - img * j[r][k];
        }
    for (size_t k = 0; k < 2 * n; ++k) {
        std::vector<GaussRat> col(2 * n);
        for (size_t r = 0; r < 2 * n; ++r) col[r] = v[r][k];
        std::vector<GaussRat> jv = gauss_mat_vec(j, col);
        bool ok = true;
        for (size_t r = 0; r < 2 * n; ++r)
            if (!(jv[r] - img * col[r]).is_zero()) ok = false;
        rep.add_fact("J v = i v (generator " + std::to_string(k) + ")", ok);
    }
    // rank L = n
    GaussMatrix vt(2 * n, std::vector<GaussRat>(2 * n));
    for (size_t r = 0; r < 2 * n; ++r)
        for (size_t k = 0; k < 2 * n; ++k) vt[k][r] = v[r][k];
    size_t rank_l = gauss_rank(vt);
    rep.add_fact("dim L = n", rank_l == n,
                 "(rank " + std::to_string(rank_l) + ", n = " + std::to_string(n) + ")");
    // L + conj(L) spans the complexified fiber
    GaussMatrix both(4 * n, std::vector<GaussRat>(2 * n));
    for (size_t k = 0; k < 2 * n; ++k)
        for (size_t r = 0; r < 2 * n; ++r) {
            both[k][r] = v[r][k];
            both[2 * n + k][r] = v[r][k].conj();
        }
    size_t rank_both = gauss_rank(both);
    rep.add_fact("L + conj(L) spans", rank_both == 2 * n,
                 "(rank " + std::to_string(rank_both) + ")");
    return rep;
}

CheckReport integrability_report(const GeneralizedStructure& s) {
    const Chart& c = s.chart();
    const size_t n = c.dim();
    CheckReport rep("integrability");
    std::vector<GSection> basis;
    for (size_t i = 0; i < n; ++i) basis.push_back(GSection::from_vector(VectorField::basis(c, i)));
    for (size_t i = 0; i < n; ++i) basis.push_back(GSection::from_form(coord_1form(c, i)));
    for (size_t p = 0; p < basis.size(); ++p)
        for (size_t q = p + 1; q < basis.size(); ++q) {
            GSection defect = integrability_defect(s, basis[p], basis[q]);
            std::string tag = "(1)[" + std::to_string(p) + "," + std::to_string(q) + "]";
            add_vector_defect(rep, tag + " TM", defect.vec);
            add_form_defect(rep, tag + " T*M", defect.form);
        }
    PolyMatrix p = s.pi_sharp(), sg = s.sigma_sharp();
    add_matrix_defect(rep, "(2.1)", s.a.m * p - p * s.a.m.transpose());
    add_matrix_defect(rep, "(3.1)", s.a.m * s.a.m + p * sg + PolyMatrix::identity(n, c.vars));
    add_matrix_defect(rep, "(4.1)", s.a.m.transpose() * sg - sg * s.a.m);
    return rep;
}

VectorField nijenhuis(const EndoField& a, const VectorField& X, const VectorField& Y) {
    VectorField aX = a.apply(X), aY = a.apply(Y);
    return lie_bracket(aX, aY) + a.apply(a.apply(lie_bracket(X, Y))) -
           a.apply(lie_bracket(aX, Y) + lie_bracket(X, aY));
}

// --- proof-equation defects -------------------------------------------------

VectorField int1_defect(const GeneralizedStructure& s, const VectorField& X, const KForm& xi) {
    const Chart& c = s.chart();
    PolyMatrix p = s.pi_sharp();
    VectorField aX = s.a.apply(X);
    VectorField pxi = sharp_apply(c, p, xi);
    VectorField lhs = lie_bracket(aX, pxi) - s.a.apply(lie_bracket(X, pxi));
    KForm inner = lie_derivative(aX, xi) - lie_derivative(X, s.a.coapply(xi));
    return lhs - sharp_apply(c, p, inner);
}

// The d-terms below are differentials of contracted scalars (d of xi(V), of
// sigma(X,Y), of sigma(aX,Y)); that is what the bracket components expand to.
KForm int2_defect(const GeneralizedStructure& s, const VectorField& X, const KForm& xi) {
    const Chart& c = s.chart();
    PolyMatrix p = s.pi_sharp(), sg = s.sigma_sharp();
    VectorField pxi = sharp_apply(c, p, xi);
    KForm lhs = flat_apply(c, sg, lie_bracket(pxi, X)) - lie_derivative(pxi, flat_apply(c, sg, X));
    VectorField psX = sharp_apply(c, p, flat_apply(c, sg, X));
    RatPoly xi_psX = c.zero();
    for (size_t i = 0; i < c.dim(); ++i) xi_psX += xi.comps[i] * psX.comps[i];
    KForm a_xi = s.a.coapply(xi);
    KForm rhs = lie_derivative(X, xi) + d_scalar(c, xi_psX) +
                lie_derivative(s.a.apply(X), a_xi) -
                s.a.coapply(lie_derivative(s.a.apply(X), xi) - lie_derivative(X, a_xi));
    return lhs - rhs;
}

VectorField int3_defect(const GeneralizedStructure& s, const VectorField& X, const VectorField& Y) {
    const Chart& c = s.chart();
    PolyMatrix p = s.pi_sharp(), sg = s.sigma_sharp();
    VectorField aX = s.a.apply(X), aY = s.a.apply(Y);
    VectorField lhs = lie_bracket(X, Y) - lie_bracket(aX, aY) +
                      s.a.apply(lie_bracket(aX, Y) + lie_bracket(X, aY));
    KForm inner = lie_derivative(X, flat_apply(c, sg, Y)) - lie_derivative(Y, flat_apply(c, sg, X)) +
                  d_scalar(c, interior2_scalar(s.sigma, X, Y));
    return lhs + sharp_apply(c, p, inner);
}

KForm int4_defect(const GeneralizedStructure& s, const VectorField& X, const VectorField& Y) {
    const Chart& c = s.chart();
    PolyMatrix sg = s.sigma_sharp();
    VectorField aX = s.a.apply(X), aY = s.a.apply(Y);
    std::array<VectorField, 2> ax_y{aX, Y};
    RatPoly sigma_a_xy = s.sigma.apply(ax_y);
    KForm lhs = -lie_derivative(aX, flat_apply(c, sg, Y)) + lie_derivative(aY, flat_apply(c, sg, X)) -
                d_scalar(c, sigma_a_xy) +
                flat_apply(c, sg, lie_bracket(aX, Y) + lie_bracket(X, aY));
    KForm rhs = s.a.coapply(lie_derivative(X, flat_apply(c, sg, Y)) -
                            lie_derivative(Y, flat_apply(c, sg, X)) +
                            d_scalar(c, interior2_scalar(s.sigma, X, Y)));
    return lhs - rhs;
}

VectorField eq32_defect(const GeneralizedStructure& s, const VectorField& X, const VectorField& Y) {
    const Chart& c = s.chart();
    return nijenhuis(s.a, X, Y) -
           sharp_apply(c, s.pi_sharp(), interior2(exterior_d(s.sigma), X, Y));
}

RatPoly eq42_defect(const GeneralizedStructure& s, const VectorField& X, const VectorField& Y,
                    const VectorField& Z) {
    KForm dsigma = exterior_d(s.sigma);
    KForm dsigma_a = exterior_d(sigma_a_form(s.a, s.sigma));
    std::array<VectorField, 3> lhs_args{X, Y, Z};
    std::array<VectorField, 3> r1{s.a.apply(X), Y, Z};
    std::array<VectorField, 3> r2{X, s.a.apply(Y), Z};
    std::array<VectorField, 3> r3{X, Y, s.a.apply(Z)};
    return dsigma_a.apply(lhs_args) - dsigma.apply(r1) - dsigma.apply(r2) - dsigma.apply(r3);
}

}  // namespace gck
