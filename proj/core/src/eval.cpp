// symmetric Jacobi recurrence with on-the-fly rescaling, and the Y / X
// profile evaluators built on top of it

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "usph/eval.hpp"
#include "usph/specfun.hpp"

namespace usph {

namespace {

// rescaling window: renormalize when the running pair leaves e^{+-230} so the
// recurrence never hits double overflow/underflow; the factor is applied to
// both running values, which keeps every ratio (and the parity symmetry of
// each step) bit-exact
constexpr double kLogWindow = 230.0;

// visit(j, value, logscale) for j = 0..j_max; true P_j = value * exp(logscale)
template <typename F>
void jacobi_sweep(std::int64_t j_max, double alpha, double x, F&& visit) {
    static const double kBig = std::exp(kLogWindow);
    static const double kSmall = std::exp(-kLogWindow);

    double cur = 1.0, logscale = 0.0;
    visit(std::int64_t{0}, cur, logscale);
    if (j_max == 0) return;

    double p1 = cur;
    cur = (alpha + 1.0) * x;
    visit(std::int64_t{1}, cur, logscale);

    for (std::int64_t n = 2; n <= j_max; ++n) {
        const double na = static_cast<double>(n) + alpha;
        const double next =
            (na * ((2.0 * na - 1.0) * x * cur - (na - 1.0) * p1)) /
            (static_cast<double>(n) * (static_cast<double>(n) + 2.0 * alpha));
        p1 = cur;
        cur = next;
        const double mag = std::max(std::fabs(cur), std::fabs(p1));
        if (mag > kBig) {
            cur *= kSmall;
            p1 *= kSmall;
            logscale += kLogWindow;
        } else if (mag != 0.0 && mag < kSmall) {
            cur *= kBig;
            p1 *= kBig;
            logscale -= kLogWindow;
        }
        visit(n, cur, logscale);
    }
}

double log_norm_const(double l, double m) {
    return 0.5 * (std::log(l) + log_gamma(l - m + 0.5) + log_gamma(l + m + 0.5)) -
           m * std::numbers::ln2 - log_gamma(l + 0.5);
}

} // namespace

EvalPoint EvalPoint::from_x(double x) {
    if (!(std::fabs(x) <= 1.0)) throw domain_error("EvalPoint: |x| must be <= 1");
    return {x, std::sqrt((1.0 - x) * (1.0 + x))};
}

EvalPoint EvalPoint::from_theta(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw domain_error("EvalPoint: theta must lie in [0, pi]");
    return {std::cos(theta), std::sin(theta)};
}

ScaledReal jacobi_symmetric(std::int64_t j, HalfInt alpha, double x) {
    if (j < 0) throw domain_error("jacobi_symmetric: degree must be >= 0");
    if (!(std::fabs(x) <= 1.0)) throw domain_error("jacobi_symmetric: |x| must be <= 1");
    if (!(alpha.value() > -1.0)) throw domain_error("jacobi_symmetric: alpha must be > -1");

    ScaledReal result = ScaledReal::zero();
    jacobi_sweep(j, alpha.value(), x, [&](std::int64_t n, double v, double ls) {
        if (n != j) return;
        if (v == 0.0) return;
        result = ScaledReal::from_log(v > 0.0 ? 1 : -1, std::log(std::fabs(v)) + ls);
    });
    return result;
}

ScaledReal norm_const(IndexPair p) {
    if (!p.in_I()) throw index_error("norm_const: pair not in I: " + p.str());
    return ScaledReal::from_log(1, log_norm_const(p.ell.value(), p.m.value()));
}

double eval_Y(IndexPair p, EvalPoint pt) {
    if (!p.in_I()) throw index_error("eval_Y: pair not in I: " + p.str());
    const ScaledReal P = jacobi_symmetric(p.degree(), p.m, pt.x);
    if (P.is_zero()) return 0.0;
    // the 0^0 at m = 0, |x| = 1 resolves to 1, so skip the weight term there
    const double wexp = p.m.twice == 0 ? 0.0 : 0.5 * p.m.value() * pt.log1mx2();
    return (P * norm_const(p) * ScaledReal::from_log(1, wexp)).to_double();
}

double eval_X(int d, IndexPair p, EvalPoint pt) {
    if (d < 2) throw domain_error("eval_X: dimension must be >= 2");
    if (!p.in_I()) throw index_error("eval_X: pair not in I: " + p.str());
    if (pt.y == 0.0) {
        if (p.m.twice < d - 2)
            throw pole_error("eval_X: pole at |x| = 1 for m < (d-2)/2, pair " + p.str());
        if (p.m.twice > d - 2) return 0.0;
        // weight power cancels exactly at m = (d-2)/2
        return (jacobi_symmetric(p.degree(), p.m, pt.x) * norm_const(p)).to_double();
    }
    const ScaledReal P = jacobi_symmetric(p.degree(), p.m, pt.x);
    if (P.is_zero()) return 0.0;
    const double wexp = 0.25 * static_cast<double>(p.m.twice - (d - 2)) * pt.log1mx2();
    return (P * norm_const(p) * ScaledReal::from_log(1, wexp)).to_double();
}

YRow::YRow(HalfInt m, std::int64_t j_max) : m_(m), j_max_(j_max) {
    if (m.twice < 0) throw index_error("YRow: m must be >= 0");
    if (j_max < 0) throw domain_error("YRow: j_max must be >= 0");
    log_c_.resize(static_cast<std::size_t>(j_max) + 1);
    const double mv = m.value();
    for (std::int64_t j = 0; j <= j_max; ++j)
        log_c_[static_cast<std::size_t>(j)] =
            log_norm_const(mv + static_cast<double>(j) + 0.5, mv);
}

void YRow::eval(EvalPoint pt, std::vector<double>& out) const {
    out.resize(log_c_.size());
    const double wexp = m_.twice == 0 ? 0.0 : 0.5 * m_.value() * pt.log1mx2();
    // |value| stays inside the rescale window, so the exp argument is bounded
    // by |log Y| + 230 and the product cannot overflow for bounded profiles
    jacobi_sweep(j_max_, m_.value(), pt.x, [&](std::int64_t j, double v, double ls) {
        out[static_cast<std::size_t>(j)] =
            v * std::exp(log_c_[static_cast<std::size_t>(j)] + wexp + ls);
    });
}

} // namespace usph
