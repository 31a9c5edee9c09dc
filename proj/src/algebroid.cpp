#include "gck/algebroid.hpp"

#include <array>

namespace gck {

PoissonAlgebroid make_poisson_algebroid(const Bivector& pi) {
    CheckReport c1 = check_C1(pi);
    if (!c1.certified())
        throw GckError("not a Poisson bivector: " + c1.summary());
    return PoissonAlgebroid(pi);
}

KForm algebroid_bracket(const PoissonAlgebroid& A, const KForm& xi, const KForm& eta) {
    return pi_bracket(A.pi, xi, eta);
}

static KForm d_scalar(const Chart& c, const RatPoly& f) {
    KForm f0(c, 0);
    f0.comps[0] = f;
    return exterior_d(f0);
}

static RatPoly contract(const KForm& oneform, const VectorField& v) {
    RatPoly s = oneform.chart.zero();
    for (size_t i = 0; i < oneform.comps.size(); ++i) s += oneform.comps[i] * v.comps[i];
    return s;
}

CheckReport check_im_form(const PoissonAlgebroid& A, const PolyMatrix& u) {
    const Chart& c = A.chart();
    const size_t n = c.dim();
    if (u.rows() != n || u.cols() != n) throw GckError("check_im_form: matrix shape mismatch");
    CheckReport rep("im form");
    PolyMatrix rho = A.anchor();
    auto coframe = [&](size_t i) {
        std::array<size_t, 1> idx{i};
        return KForm::coordinate(c, idx);
    };
    auto u_of = [&](const KForm& xi) { return KForm(c, 1, u.apply(xi.comps)); };
    auto rho_of = [&](const KForm& xi) { return sharp_apply(c, rho, xi); };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            RatPoly defect = contract(u_of(coframe(i)), rho_of(coframe(j))) +
                             contract(u_of(coframe(j)), rho_of(coframe(i)));
            rep.add("(18)[d" + c.coords[i] + ",d" + c.coords[j] + "]", defect);
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            KForm alpha = coframe(i), beta = coframe(j);
            KForm lhs = u_of(pi_bracket(A.pi, alpha, beta));
            KForm rhs = lie_derivative(rho_of(alpha), u_of(beta)) -
                        lie_derivative(rho_of(beta), u_of(alpha)) +
                        d_scalar(c, contract(u_of(alpha), rho_of(beta)));
            KForm defect = lhs - rhs;
            if (defect.is_zero()) {
                rep.add_fact("(19)[d" + c.coords[i] + ",d" + c.coords[j] + "]", true);
            } else {
                for (size_t k = 0; k < n; ++k)
                    if (!defect.comps[k].is_zero())
                        rep.add("(19)[d" + c.coords[i] + ",d" + c.coords[j] + "] d" + c.coords[k],
                                defect.comps[k]);
            }
        }
    return rep;
}

}  // namespace gck
