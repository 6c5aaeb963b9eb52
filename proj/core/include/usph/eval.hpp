#pragma once
// evaluation of the symmetric Jacobi polynomials and the spherical profiles
// Y_{ell,m} (normalized weight-space profile) and X_{ell,m} (d-dimensional)

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "usph/errors.hpp"
#include "usph/halfint.hpp"
#include "usph/scaled.hpp"

namespace usph {

// abscissa plus its conjugate y = sqrt(1-x^2), kept together so the
// near-endpoint value of 1-x^2 never goes through a cancelling subtraction
struct EvalPoint {
    double x = 0.0;
    double y = 1.0;

    static EvalPoint from_x(double x);          // requires |x| <= 1
    static EvalPoint from_theta(double theta);  // x = cos(theta), y = sin(theta)

    // log(1-x^2); -inf at the endpoints
    double log1mx2() const {
        if (y == 0.0) return -std::numeric_limits<double>::infinity();
        if (std::fabs(x) <= 0.7) return std::log1p(-x * x);
        return 2.0 * std::log(y);
    }
};

// P_j^{(alpha,alpha)}(x) by the three-term recurrence, rescaled on the fly;
// j >= 0, |x| <= 1
ScaledReal jacobi_symmetric(std::int64_t j, HalfInt alpha, double x);

// c_{ell,m} = sqrt(ell Gamma(ell-m+1/2) Gamma(ell+m+1/2)) / (2^m Gamma(ell+1/2));
// requires p in I
ScaledReal norm_const(IndexPair p);

// Y_{ell,m}(x) = c_{ell,m} (1-x^2)^{m/2} P_j^{(m,m)}(x); finite for all |x| <= 1
double eval_Y(IndexPair p, EvalPoint pt);

// X_{ell,m} = (1-x^2)^{-(d-2)/4} Y_{ell,m}; requires p in I (any d >= 2). at
// |x| = 1: 0 when m > (d-2)/2, the finite limit when m = (d-2)/2, pole error
// below (such pairs sit outside I_d but the map itself is still defined)
double eval_X(int d, IndexPair p, EvalPoint pt);

// one recurrence sweep yields Y_{ell,m}(x) for every degree j = 0..j_max at
// fixed m; the log of c_{ell,m} is precomputed per degree at construction
class YRow {
  public:
    YRow(HalfInt m, std::int64_t j_max);

    // out[j] = Y_{m+j+1/2, m}(x), j = 0..j_max (out resized)
    void eval(EvalPoint pt, std::vector<double>& out) const;

    std::int64_t j_max() const { return j_max_; }
    HalfInt m() const { return m_; }
    double log_c(std::int64_t j) const { return log_c_[static_cast<std::size_t>(j)]; }

  private:
    HalfInt m_;
    std::int64_t j_max_;
    std::vector<double> log_c_;
};

} // namespace usph
