#pragma once
// classical special functions and quadrature rules the evaluators sit on

#include <cstdint>
#include <functional>
#include <vector>

#include "usph/errors.hpp"

namespace usph {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0; // nominal polynomial exactness degree
};

// log Gamma(x) for x > 0
double log_gamma(double x);

// binomial coefficient via log_gamma, cross-checked exactly for n < 1000;
// requires 0 <= k <= n
double binomial(std::int64_t n, std::int64_t k);

// Bessel function of the first kind, real order; nu in [0, 2000], z in [0, 5000]
double bessel_j(double nu, double z);

// the whole order row J_{nu0 + k}(z), k = 0..count-1, in one backward sweep;
// same accuracy envelope as bessel_j
std::vector<double> bessel_j_row(double nu0, int count, double z);

// n-point Gauss-Legendre rule on [-1,1]; 1 <= n <= 100000
QuadratureRule gauss_legendre(int n);

// rules on the nodes x_j = cos(j pi / (n_points-1)), j = 0..n_points-1, for
// integrals over [-1,1]:
//  - theta_trapezoid: trapezoid weights in theta times sin(theta); exact when
//    g(cos t) sin t is a cosine polynomial of harmonic < 2(n_points-1)
//  - clenshaw_curtis: exact when g is a polynomial of degree <= n_points-1
QuadratureRule theta_trapezoid(int n_points);
QuadratureRule clenshaw_curtis(int n_points);

// adaptive quadrature (embedded 7/15-point Gauss panels, recursive bisection)
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-13);

namespace detail {
// the two bessel_j branches, exposed so tests can probe the switchover
double bessel_j_series(double nu, double z);
double bessel_j_miller(double nu, double z);
double bessel_switch_z(double nu); // series for z <= this
} // namespace detail

} // namespace usph
