#pragma once
// index enumeration and the exact spectral quantities attached to (d, ell, m)

#include <cstdint>
#include <vector>

#include "usph/errors.hpp"
#include "usph/halfint.hpp"

namespace usph {

// all pairs of I_d with ell <= ell_max, sorted by (ell, m); d >= 2
std::vector<IndexPair> enumerate_indices(int d, HalfInt ell_max);

// b = m/ell, a^2 = (ell-m)(ell+m)/ell^2, xbar^2 = (ell^2 - m^2 + 3/4)/(ell^2 - 1/4)
// (xbar only when m > 1); requires p in I
TransitionData transition_points(IndexPair p);

// Q(x) = (ell^2 - 1/4)(x^2 - xbar^2)/(1 - x^2)^2; requires m > 1 and |x| < 1
double q_factor(IndexPair p, double x);

// eigenvalue (ell + (d-1)/2)(ell - (d-1)/2) of the pair Laplacian; ell in N_d
double laplace_eigenvalue(int d, HalfInt ell);

// dimension of the degree-ell spherical harmonic space on S^d; d >= 1, ell in N_d
std::int64_t harmonic_dim(int d, HalfInt ell);

// total measure of the unit sphere S^d in R^{d+1}, d >= 1
double sphere_measure(int d);

} // namespace usph
