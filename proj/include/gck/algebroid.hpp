// The Lie algebroid structure a Poisson bivector induces on T*M
// (anchor pi_sharp, bracket [.,.]_pi) and IM-form verification.
#pragma once

#include "gck/courant.hpp"

namespace gck {

struct PoissonAlgebroid {
    Bivector pi;
    explicit PoissonAlgebroid(Bivector p) : pi(std::move(p)) {}
    const Chart& chart() const { return pi.chart; }
    PolyMatrix anchor() const { return sharp_bivector(pi); }
};

// Validates (C1) before wrapping; throws on a non-Poisson bivector.
PoissonAlgebroid make_poisson_algebroid(const Bivector& pi);

// Delegates to the 1-form bracket of the bivector.
KForm algebroid_bracket(const PoissonAlgebroid& A, const KForm& xi, const KForm& eta);

// IM-form equations for a bundle map u: T*M -> T*M given by its matrix in
// the coordinate coframe (column i = u(dx_i)):
//   (18)  <u(alpha), rho(beta)> = -<u(beta), rho(alpha)>
//   (19)  u([alpha,beta]) = L_alpha(u(beta)) - L_beta(u(alpha))
//                            + d<u(alpha), rho(beta)>
CheckReport check_im_form(const PoissonAlgebroid& A, const PolyMatrix& u);

}  // namespace gck
