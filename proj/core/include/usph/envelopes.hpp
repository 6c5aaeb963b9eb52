#pragma once
// closed-form envelope bounds for the profiles, split by asymptotic regime

#include "usph/errors.hpp"
#include "usph/eval.hpp"
#include "usph/halfint.hpp"

namespace usph {

// knobs shared by the regime-split envelopes: the regime threshold epsilon
// (Hermite side m >= eps*ell, Bessel side m <= eps*ell), the decay-branch
// rate c, and the decay-branch onset multiplier K (active for |x| >= K*a)
struct RegimeParams {
    double epsilon = 0.5;
    double c = 0.05;
    double K = 2.0;
};

// Hermite-side envelope for |X_{ell,m}|:
//   (1/ell + |x^2 - a^2|)^{-1/4}, min'd for |x| >= K*a with the decay branch
//   |x|^{-1/2} (1-x^2)^{(c eps ell - (d-2)/2)_+ / 2}.
// requires p in I_d and m >= eps*ell
double hermite_envelope(int d, IndexPair p, EvalPoint pt, RegimeParams rp = {});

// Bessel-side envelope for |X_{ell,m}|:
//   y^{-(d-2)/2} (ell^{-2} (1+m)^{4/3} + |y^2 - b^2|)^{-1/4},
//   min'd with ell^{(d-1)/2} 2^{-m} in the inner region y <= b/(2e).
// requires p in I_d and m <= eps*ell; +inf at y = 0 when d > 2
double bessel_envelope(int d, IndexPair p, EvalPoint pt, RegimeParams rp = {});

// small-y bound for |Y_{ell,m}| on the Bessel side:
//   b^{-(m+1/2)} (y e)^m for m > 0; for m = 0 the constant bound sqrt(ell)
double exp_small_y_bound(IndexPair p, EvalPoint pt);

// range-free bound for |Y_{ell,m}|: min of the two component shapes below
double universal_bound(IndexPair p, EvalPoint pt);

// component shapes of universal_bound, individually:
//   dim shape:    sqrt( (1-x^2)^m (ell/sqrt(m+1)) C(ell-1/2+m, 2m) )
//   parity shape: sqrt(sqrt(ell)) for whole m,
//                 sqrt( (1-x^2)^{1/2} ell / sqrt(m) ) for half-odd m
double universal_bound_dim(IndexPair p, EvalPoint pt);
double universal_bound_parity(IndexPair p, EvalPoint pt);

} // namespace usph
