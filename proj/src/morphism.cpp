#include "gck/morphism.hpp"

#include "gck/gaussian.hpp"

namespace gck {

GHolMapCandidate::GHolMapCandidate(PolyMap map, GeneralizedStructure src, GeneralizedStructure dst)
    : f(std::move(map)), source_structure(std::move(src)), target_structure(std::move(dst)) {
    if (!(f.source == source_structure.chart()) || !(f.target == target_structure.chart()))
        throw GckError("morphism candidate: charts do not match the map");
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

static void add_form_defect(CheckReport& rep, const std::string& name, const KForm& f) {
    if (f.is_zero()) {
        rep.add_fact(name, true);
        return;
    }
    for (size_t i = 0; i < f.comps.size(); ++i)
        if (!f.comps[i].is_zero()) rep.add(name + " #" + std::to_string(i), f.comps[i]);
}

CheckReport pushforward_bivector_check(const PolyMap& f, const Bivector& pi1, const Bivector& pi2) {
    if (!(pi1.chart == f.source) || !(pi2.chart == f.target))
        throw GckError("pushforward check: chart mismatch");
    CheckReport rep("bivector relatedness");
    PolyMatrix jac = f.jacobian();
    PolyMatrix lhs = jac * sharp_bivector(pi1) * jac.transpose();
    PolyMatrix rhs = sharp_bivector(pi2).substitute(f.images(), f.source.vars);
    add_matrix_defect(rep, "(pi related)", lhs - rhs);
    return rep;
}

CheckReport check_gholomorphic(const GHolMapCandidate& c) {
    CheckReport rep("generalized holomorphic");
    rep.merge(pushforward_bivector_check(c.f, c.source_structure.pi, c.target_structure.pi));
    add_form_defect(rep, "(sigma pullback) sigma1 - f*sigma2",
                    c.source_structure.sigma - pullback(c.f, c.target_structure.sigma));
    PolyMatrix jac = c.f.jacobian();
    PolyMatrix a2f = c.target_structure.a.m.substitute(c.f.images(), c.f.source.vars);
    add_matrix_defect(rep, "(intertwine) df a1 - a2 df", jac * c.source_structure.a.m - a2f * jac);
    return rep;
}

CheckReport check_hitchin_realization(const PolyMap& mu, const HitchinPair& pair,
                                      const GeneralizedStructure& target) {
    if (!(pair.chart() == mu.source))
        throw GckError("hitchin realization: pair lives on the wrong chart");
    GeneralizedStructure src = hitchin_to_gcs(pair);
    return check_gholomorphic(GHolMapCandidate(mu, std::move(src), target));
}

CheckReport fiber_complex_check(const GHolMapCandidate& c, const std::vector<Rational>& point) {
    const Chart& src = c.f.source;
    if (point.size() != src.dim()) throw GckError("fiber check: point dimension mismatch");
    RatMatrix jac = eval_matrix(c.f.jacobian(), point);
    size_t rank = rat_rank(jac);
    if (rank != c.f.target.dim())
        throw NotRegularPoint("fiber check: Jacobian rank " + std::to_string(rank) +
                              " < target dimension " + std::to_string(c.f.target.dim()));
    CheckReport rep("fiber complex structure");
    auto kernel = rat_kernel(jac, src.dim());
    rep.add_fact("kernel dimension = " + std::to_string(kernel.size()), true);
    if (kernel.empty()) return rep;
    RatMatrix a1 = eval_matrix(c.source_structure.a.m, point);
    for (size_t kidx = 0; kidx < kernel.size(); ++kidx) {
        std::vector<Rational> ak = rat_mat_vec(a1, kernel[kidx]);
        rep.add_fact("a1 preserves Ker(df) (basis " + std::to_string(kidx) + ")",
                     rat_in_span(kernel, ak));
        std::vector<Rational> aak = rat_mat_vec(a1, ak);
        bool sq = true;
        for (size_t i = 0; i < aak.size(); ++i)
            if (!(aak[i] + kernel[kidx][i]).is_zero()) sq = false;
        rep.add_fact("a1^2 = -Id on Ker(df) (basis " + std::to_string(kidx) + ")", sq);
    }
    // Torsion components at the point, contracted into kernel directions.
    const size_t n = src.dim();
    std::vector<std::vector<Rational>> nij(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            VectorField nv = nijenhuis_pair(c.source_structure.a, i, j);
            std::vector<Rational> vals(n);
            for (size_t k = 0; k < n; ++k) vals[k] = nv.comps[k].eval(point);
            nij[i * n + j] = vals;
        }
    for (size_t a = 0; a < kernel.size(); ++a)
        for (size_t b = a + 1; b < kernel.size(); ++b) {
            std::vector<Rational> total(n, Rational(0));
            for (size_t i = 0; i < n; ++i)
                for (size_t j = i + 1; j < n; ++j) {
                    Rational coeff =
                        kernel[a][i] * kernel[b][j] - kernel[a][j] * kernel[b][i];
                    if (coeff.is_zero()) continue;
                    for (size_t k = 0; k < n; ++k) total[k] += coeff * nij[i * n + j][k];
                }
            bool zero = true;
            for (const auto& v : total)
                if (!v.is_zero()) zero = false;
            rep.add_fact("torsion vanishes on Ker(df) (" + std::to_string(a) + "," +
                             std::to_string(b) + ")",
                         zero);
        }
    return rep;
}

CheckReport moment_map_defect(const PolyMap& mu, const KForm& omega, const Bivector& target_pi,
                              const std::vector<Rational>& point,
                              const std::vector<Rational>& alpha, const VectorField& rho) {
    if (!(omega.chart == mu.source) || !(rho.chart == mu.source))
        throw GckError("moment map: omega and rho must live on the source chart");
    if (!(target_pi.chart == mu.target)) throw GckError("moment map: pi must live on the target");
    if (point.size() != mu.source.dim() || alpha.size() != mu.target.dim())
        throw GckError("moment map: dimension mismatch");
    std::vector<Rational> q = mu.apply_point(point);
    RatMatrix p2 = eval_matrix(sharp_bivector(target_pi), q);
    std::vector<Rational> pa = rat_mat_vec(p2, alpha);
    for (const auto& v : pa)
        if (!v.is_zero())
            throw NotInIsotropyKernel("moment map: alpha is not in Ker(pi#) at mu(point)");
    CheckReport rep("moment map");
    RatMatrix w = eval_matrix(sharp_form(omega), point);
    std::vector<Rational> rho_p(mu.source.dim());
    for (size_t i = 0; i < rho_p.size(); ++i) rho_p[i] = rho.comps[i].eval(point);
    std::vector<Rational> lhs = rat_mat_vec(w, rho_p);
    RatMatrix jac = eval_matrix(mu.jacobian(), point);
    std::vector<Rational> rhs(mu.source.dim(), Rational(0));
    for (size_t i = 0; i < mu.source.dim(); ++i)
        for (size_t t = 0; t < mu.target.dim(); ++t) rhs[i] += jac[t][i] * alpha[t];
    for (size_t i = 0; i < mu.source.dim(); ++i) {
        Rational d = lhs[i] - rhs[i];
        rep.add_fact("(moment) component d" + mu.source.coords[i], d.is_zero(),
                     d.is_zero() ? "" : "= " + d.to_string());
    }
    return rep;
}

}  // namespace gck
