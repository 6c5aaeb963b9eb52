// regime-split envelope bounds; everything is evaluated in log space and
// exponentiated once, so extreme parameter corners degrade to +inf instead of
// overflowing mid-expression

#include <cmath>
#include <limits>
#include <numbers>

#include "usph/envelopes.hpp"
#include "usph/index.hpp"
#include "usph/specfun.hpp"

namespace usph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_exp(double logv) { return logv > 709.0 ? kInf : std::exp(logv); }

} // namespace

double hermite_envelope(int d, IndexPair p, EvalPoint pt, RegimeParams rp) {
    if (!p.in_I_d(d))
        throw index_error("hermite_envelope: pair not in I_d: " + p.str());
    const double l = p.ell.value();
    if (!(p.m.value() >= rp.epsilon * l))
        throw regime_error("hermite_envelope: pair is outside the regime m >= eps*ell");

    const TransitionData t = transition_points(p);
    const double a2 = t.a * t.a;
    const double main = std::pow(1.0 / l + std::fabs(pt.x * pt.x - a2), -0.25);

    const double ax = std::fabs(pt.x);
    if (ax < rp.K * t.a) return main;

    // decay branch: |x|^{-1/2} (1-x^2)^{e/2} with e = (c eps ell - (d-2)/2)_+
    const double e = std::max(rp.c * rp.epsilon * l - 0.5 * (d - 2), 0.0);
    const double log_decay =
        -0.5 * std::log(ax) + (e == 0.0 ? 0.0 : 0.5 * e * pt.log1mx2());
    return std::min(main, safe_exp(log_decay));
}

double bessel_envelope(int d, IndexPair p, EvalPoint pt, RegimeParams rp) {
    if (!p.in_I_d(d))
        throw index_error("bessel_envelope: pair not in I_d: " + p.str());
    const double l = p.ell.value();
    if (!(p.m.value() <= rp.epsilon * l))
        throw regime_error("bessel_envelope: pair is outside the regime m <= eps*ell");

    if (pt.y == 0.0 && d > 2) return kInf;

    const double b = p.m.value() / l;
    const double ym = pt.y * pt.y - b * b;
    const double core =
        std::pow(std::pow(1.0 + p.m.value(), 4.0 / 3.0) / (l * l) + std::fabs(ym), -0.25);
    const double main =
        d == 2 ? core : core * std::pow(pt.y, -0.5 * (d - 2)); // y > 0 when d > 2

    if (pt.y <= b / (2.0 * std::numbers::e)) {
        const double log_inner = 0.5 * (d - 1) * std::log(l) - p.m.value() * std::numbers::ln2;
        return std::min(main, safe_exp(log_inner));
    }
    return main;
}

double exp_small_y_bound(IndexPair p, EvalPoint pt) {
    if (!p.in_I()) throw index_error("exp_small_y_bound: pair not in I: " + p.str());
    if (p.m.twice == 0) return std::sqrt(p.ell.value());
    const double m = p.m.value();
    const double b = m / p.ell.value();
    // b^{-(m+1/2)} (y e)^m, assembled in logs; 0 at y = 0
    const double logv = -(m + 0.5) * std::log(b) + m * (1.0 + std::log(pt.y));
    return safe_exp(logv);
}

double universal_bound_dim(IndexPair p, EvalPoint pt) {
    if (!p.in_I()) throw index_error("universal_bound_dim: pair not in I: " + p.str());
    const double l = p.ell.value();
    const double m = p.m.value();
    const std::int64_t n = p.degree() + p.m.twice; // ell - 1/2 + m
    const std::int64_t k = p.m.twice;              // 2m
    const double log_binom = log_gamma(static_cast<double>(n) + 1.0) -
                             log_gamma(static_cast<double>(k) + 1.0) -
                             log_gamma(static_cast<double>(n - k) + 1.0);
    const double wexp = p.m.twice == 0 ? 0.0 : m * pt.log1mx2();
    const double logv =
        0.5 * (wexp + std::log(l) - 0.5 * std::log(m + 1.0) + log_binom);
    return safe_exp(logv);
}

double universal_bound_parity(IndexPair p, EvalPoint pt) {
    if (!p.in_I()) throw index_error("universal_bound_parity: pair not in I: " + p.str());
    const double l = p.ell.value();
    if (p.m.is_whole()) return std::pow(l, 0.25);
    const double logv =
        0.5 * (std::log(pt.y) + std::log(l) - 0.5 * std::log(p.m.value()));
    return safe_exp(logv);
}

double universal_bound(IndexPair p, EvalPoint pt) {
    return std::min(universal_bound_dim(p, pt), universal_bound_parity(p, pt));
}

} // namespace usph
