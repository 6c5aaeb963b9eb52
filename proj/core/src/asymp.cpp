// zeta change of variables (closed-form left sides, quadrature right sides,
// safeguarded Newton for the root) and the ODE-based decay checks

#include <algorithm>
#include <cmath>
#include <numbers>

#include "usph/asymp.hpp"
#include "usph/index.hpp"
#include "usph/specfun.hpp"

namespace usph {

namespace {

// F(v) = v - b atan(v/b): the upper closed form in v = sqrt(zeta - b^2).
// series for small v/b, where the direct difference cancels
double f_upper(double v, double b) {
    const double r = v / b;
    if (r <= 0.1) {
        const double t = r * r;
        double s = 0.0, tk = 1.0;
        for (int k = 0; k <= 7; ++k) {
            s += tk / static_cast<double>(2 * k + 3);
            tk *= -t;
        }
        return v * r * r * s;
    }
    return v - b * std::atan(r);
}

// G(U) = b atanh(U/b) - U: the lower closed form in U = sqrt(b^2 - zeta)
double g_lower(double U, double b) {
    const double r = U / b;
    if (r <= 0.1) {
        const double t = r * r;
        double s = 0.0, tk = 1.0;
        for (int k = 0; k <= 7; ++k) {
            s += tk / static_cast<double>(2 * k + 3);
            tk *= t;
        }
        return U * r * r * s;
    }
    return b * std::atanh(r) - U;
}

// root of a strictly increasing f on [0, hi] with f(0) = 0: Newton clipped to
// a shrinking bracket. f(hi) < R (target beyond floating resolution) -> hi
template <typename F, typename DF>
double solve_increasing(F&& f, DF&& df, double R, double hi, double v0) {
    if (!(f(hi) - R > 0.0)) return hi;
    double lo = 0.0;
    double v = std::clamp(v0, lo, hi);
    for (int it = 0; it < 200; ++it) {
        const double fv = f(v) - R;
        if (fv == 0.0) return v;
        (fv > 0.0 ? hi : lo) = v;
        if (hi - lo <= 1e-16 * hi) break;
        const double d = df(v);
        double vn = d > 0.0 ? v - fv / d : 0.5 * (lo + hi);
        if (!(vn > lo && vn < hi)) vn = 0.5 * (lo + hi);
        v = vn;
    }
    return 0.5 * (lo + hi);
}

struct DevSolution {
    bool upper = true;  // which branch of the implicit equation
    double dev = 0.0;   // sqrt(|zeta - b^2|)
    double residual = 0.0;
};

DevSolution solve_dev(IndexPair p, double x, double epsilon) {
    if (!p.in_I()) throw index_error("zeta_solve: pair not in I: " + p.str());
    if (p.m.twice <= 0) throw domain_error("zeta_solve: requires m > 0");
    if (!(p.m.value() <= epsilon * p.ell.value()))
        throw regime_error("zeta_solve: pair is outside the regime m <= eps*ell");
    if (!(x >= 0.0 && x <= 1.0)) throw domain_error("zeta_solve: requires 0 <= x <= 1");

    const TransitionData t = transition_points(p);
    const double b = t.b;
    if (x == 1.0) return {false, b, 0.0}; // zeta = 0 exactly in the limit

    if (x <= t.a) {
        const double R = detail::zeta_rhs_upper(p, x);
        if (R == 0.0) return {true, 0.0, 0.0};
        auto f = [b](double v) { return f_upper(v, b); };
        auto df = [b2 = b * b](double v) { return v * v / (b2 + v * v); };
        const double v =
            solve_increasing(f, df, R, R + 0.5 * std::numbers::pi * b, std::cbrt(3.0 * b * b * R));
        const double res = std::fabs(f(v) - R);
        if (!(res <= 1e-8 * (1.0 + R)))
            throw convergence_error("zeta_solve: root iteration did not converge", res);
        return {true, v, res};
    }
    const double R = detail::zeta_rhs_lower(p, x);
    if (R == 0.0) return {false, 0.0, 0.0};
    auto g = [b](double U) { return g_lower(U, b); };
    auto dg = [b2 = b * b](double U) { return U * U / (b2 - U * U); };
    const double U =
        solve_increasing(g, dg, R, std::nextafter(b, 0.0), std::cbrt(3.0 * b * b * R));
    const double res = std::fabs(g(U) - R);
    if (!(res <= 1e-8 * (1.0 + R)))
        throw convergence_error("zeta_solve: root iteration did not converge", res);
    return {false, U, res};
}

} // namespace

namespace detail {

double zeta_lhs_upper(double zeta, double b2) {
    if (!(b2 > 0.0 && zeta >= b2)) throw domain_error("zeta_lhs_upper: requires zeta >= b^2 > 0");
    return f_upper(std::sqrt(zeta - b2), std::sqrt(b2));
}

double zeta_lhs_lower(double zeta, double b2) {
    if (!(b2 > 0.0 && zeta <= b2 && zeta >= 0.0))
        throw domain_error("zeta_lhs_lower: requires 0 <= zeta <= b^2");
    return g_lower(std::sqrt(b2 - zeta), std::sqrt(b2));
}

double zeta_rhs_upper(IndexPair p, double x) {
    const TransitionData t = transition_points(p);
    if (!(x >= 0.0 && x <= t.a * (1.0 + 4e-16)))
        throw domain_error("zeta_rhs_upper: requires 0 <= x <= a");
    const double a2 = t.a * t.a, b2 = t.b * t.b;
    const double t0 = std::asin(std::min(x / t.a, 1.0));
    // s = a sin(t) removes the square-root singularity at s = a; the
    // denominator 1 - a^2 sin^2 t is regrouped as b^2 + a^2 cos^2 t
    return integrate(
        [a2, b2](double s) {
            const double c = std::cos(s);
            return a2 * c * c / (b2 + a2 * c * c);
        },
        t0, 0.5 * std::numbers::pi);
}

double zeta_rhs_lower(IndexPair p, double x) {
    const TransitionData t = transition_points(p);
    if (!(x >= t.a && x < 1.0)) throw domain_error("zeta_rhs_lower: requires a <= x < 1");
    const double a2 = t.a * t.a, b = t.b;
    const double U = std::sqrt((x - t.a) * (x + t.a));
    if (U == 0.0) return 0.0;
    // u = sqrt(s^2 - a^2) flattens the singularity at s = a
    return integrate(
        [a2, b](double u) {
            return u * u / ((b - u) * (b + u) * std::sqrt(u * u + a2));
        },
        0.0, U);
}

} // namespace detail

ZetaSolution zeta_solve(IndexPair p, double x, double epsilon) {
    const DevSolution s = solve_dev(p, x, epsilon);
    const double b = transition_points(p).b;
    const double zeta = s.upper ? b * b + s.dev * s.dev : (b - s.dev) * (b + s.dev);
    return {p, x, zeta, s.residual};
}

double claim_ratio(IndexPair p, double x, double epsilon) {
    const TransitionData t = transition_points(p);
    const EvalPoint pt = EvalPoint::from_x(x);
    if (!(pt.y >= 0.5 * t.b && pt.y <= t.b / std::sqrt(epsilon)))
        throw domain_error("claim_ratio: y outside the window [b/2, b/sqrt(eps)]");
    const double denom = (t.a - x) * (t.a + x); // y^2 - b^2, cancellation-free
    if (denom == 0.0) throw skip_point("claim_ratio: removable point y = b");
    const DevSolution s = solve_dev(p, x, epsilon);
    // numerator sign matches the branch, so the ratio is positive either way
    return s.upper ? (s.dev * s.dev) / denom : (s.dev * s.dev) / (-denom);
}

double eval_L(IndexPair p, double x) {
    const EvalPoint pt = EvalPoint::from_x(x);
    return pt.y * eval_Y(p, pt);
}

double q_eval(IndexPair p, double x) {
    if (!p.in_I()) throw index_error("q_eval: pair not in I: " + p.str());
    if (!(std::fabs(x) < 1.0)) throw domain_error("q_eval: requires |x| < 1");
    const double tl2 = static_cast<double>(p.ell.twice) * static_cast<double>(p.ell.twice);
    const double tm2 = static_cast<double>(p.m.twice) * static_cast<double>(p.m.twice);
    const double omx2 = (1.0 - x) * (1.0 + x);
    return 0.25 * ((tl2 - 1.0) * x * x - (tl2 - tm2 + 3.0)) / (omx2 * omx2);
}

double ode_residual(IndexPair p, double x, double h) {
    if (!(h >= 1e-6 && h <= 1e-3)) throw domain_error("ode_residual: h out of [1e-6, 1e-3]");
    if (!(std::fabs(x) + 2.0 * h < 1.0))
        throw domain_error("ode_residual: stencil leaves (-1, 1)");
    const double L = eval_L(p, x);
    const double D = (eval_L(p, x + h) - 2.0 * L + eval_L(p, x - h)) / (h * h);
    const double QL = q_eval(p, x) * L;
    const double l = p.ell.value();
    const double M = h * h * std::max(1.0, std::fabs(L)) * (l * l) * (l * l);
    return std::fabs(D - QL) / (std::fabs(QL) + M);
}

double ode_residual_extrapolated(IndexPair p, double x, double h) {
    if (!(h >= 1e-6 && h <= 1e-3))
        throw domain_error("ode_residual_extrapolated: h out of [1e-6, 1e-3]");
    if (!(std::fabs(x) + 2.0 * h < 1.0))
        throw domain_error("ode_residual_extrapolated: stencil leaves (-1, 1)");
    const double L = eval_L(p, x);
    auto second_diff = [&](double hh) {
        return (eval_L(p, x + hh) - 2.0 * L + eval_L(p, x - hh)) / (hh * hh);
    };
    const double D = (4.0 * second_diff(0.5 * h) - second_diff(h)) / 3.0;
    const double QL = q_eval(p, x) * L;
    const double l = p.ell.value();
    // the mass floor deliberately stays at the coarse step: the extrapolated
    // difference still carries the roundoff of the h/2 stencil
    const double M = h * h * std::max(1.0, std::fabs(L)) * (l * l) * (l * l);
    return std::fabs(D - QL) / (std::fabs(QL) + M);
}

double ode_step(double x) {
    // the /20 keeps the h^4 Richardson remainder in check near the endpoints,
    // where the derivatives of Q grow like powers of 1/(1-x^2)
    return std::clamp(std::min(1e-3, (1.0 - std::fabs(x)) / 20.0), 1e-6, 1e-3);
}

std::optional<bool> sign_check(IndexPair p, double x) {
    constexpr double h = 1e-6;
    if (p.m.twice <= 2) throw domain_error("sign_check: requires m > 1");
    const TransitionData t = transition_points(p);
    if (!(t.xbar && x > *t.xbar && x + h < 1.0))
        throw domain_error("sign_check: requires xbar < x < 1");
    const double L = eval_L(p, x);
    const double Lp = (eval_L(p, x + h) - eval_L(p, x - h)) / (2.0 * h);
    if (std::fabs(L) <= 10.0 * h || std::fabs(Lp) <= 10.0 * h) return std::nullopt;
    return L * Lp < 0.0;
}

std::pair<double, double> titchmarsh_check(IndexPair p, double x_star, double x) {
    if (p.m.twice <= 2) throw domain_error("titchmarsh_check: requires m > 1");
    const TransitionData t = transition_points(p);
    if (!(t.xbar && *t.xbar < x_star && x_star < x && x < 1.0))
        throw domain_error("titchmarsh_check: requires xbar < x_star < x < 1");
    const double lhs = std::fabs(eval_L(p, x));
    const double integral = integrate(
        [p](double s) { return std::sqrt(std::max(q_eval(p, s), 0.0)); }, x_star, x);
    const double rhs = std::fabs(eval_L(p, x_star)) * std::exp(-integral);
    return {lhs, rhs};
}

} // namespace usph
