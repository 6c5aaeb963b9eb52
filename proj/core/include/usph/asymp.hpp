#pragma once
// machinery for checking the asymptotic structure numerically: the implicit
// zeta change of variables, the second-order ODE satisfied by
// L = (1-x^2)^{1/2} Y, and the decay comparisons built on it

#include <optional>
#include <utility>

#include "usph/errors.hpp"
#include "usph/eval.hpp"
#include "usph/halfint.hpp"

namespace usph {

struct ZetaSolution {
    IndexPair pair;
    double x = 0.0;
    double zeta = 0.0;
    double residual = 0.0; // |closed-form lhs - quadrature rhs| at the root
};

// solve the implicit equation defining zeta(x) (upper branch on [0,a], lower
// branch on [a,1)); requires p in I with 0 < m <= epsilon*ell and 0 <= x <= 1
// (x = 1 maps to zeta = 0 exactly)
ZetaSolution zeta_solve(IndexPair p, double x, double epsilon = 0.5);

// (zeta - b^2) / (y^2 - b^2); requires b/2 <= y <= b/sqrt(epsilon); throws
// skip_point at the removable singularity y = b
double claim_ratio(IndexPair p, double x, double epsilon = 0.5);

// L = (1-x^2)^{1/2} Y and the potential Q with L'' = Q L. q_eval uses the
// xbar-free form of Q, so it is valid for every pair in I (q_factor in
// index.hpp is the xbar form and requires m > 1)
double eval_L(IndexPair p, double x);
double q_eval(IndexPair p, double x);

// |D_h L / h^2 - QL| / (|QL| + M_h) with the central second difference D_h
// and the mass floor M_h = h^2 max(1,|L|) ell^4; requires |x| + 2h < 1 and
// h in [1e-6, 1e-3]
double ode_residual(IndexPair p, double x, double h);

// same residual after Richardson extrapolation over h and h/2
double ode_residual_extrapolated(IndexPair p, double x, double h);

// step size used by the harness: min(1e-3, (1-|x|)/20) clamped to [1e-6, 1e-3]
double ode_step(double x);

// sign of L * L' at x (true iff negative, i.e. |L| decaying); L' by central
// difference with h = 1e-6; nullopt when either factor is below 10h in
// magnitude (too small to sign). requires m > 1 and xbar < x < 1
std::optional<bool> sign_check(IndexPair p, double x);

// (|L(x)|, |L(x_star)| exp(-int_{x_star}^x sqrt(Q))); requires
// xbar < x_star < x < 1 (so Q > 0 on the integration interval)
std::pair<double, double> titchmarsh_check(IndexPair p, double x_star, double x);

namespace detail {
// closed-form left sides of the zeta equation (antiderivatives in zeta),
// exposed so tests can check them against direct quadrature:
//   upper (zeta >= b^2): int_{b^2}^{zeta} (xi-b^2)^{1/2}/(2 xi) dxi
//   lower (zeta <= b^2): int_{zeta}^{b^2} (b^2-xi)^{1/2}/(2 xi) dxi
double zeta_lhs_upper(double zeta, double b2);
double zeta_lhs_lower(double zeta, double b2);
// right sides: int_x^a (a^2-s^2)^{1/2}/(1-s^2) ds resp.
// int_a^x (s^2-a^2)^{1/2}/(1-s^2) ds, via singularity-killing substitutions
double zeta_rhs_upper(IndexPair p, double x);
double zeta_rhs_lower(IndexPair p, double x);
} // namespace detail

} // namespace usph
