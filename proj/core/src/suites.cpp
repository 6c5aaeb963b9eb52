// the ten named check suites; each pins the scale parameters of one
// documented claim and reduces it to a single pass/fail line

#include "usph/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "usph/asymp.hpp"
#include "usph/envelopes.hpp"
#include "usph/errors.hpp"
#include "usph/eval.hpp"
#include "usph/halfint.hpp"
#include "usph/index.hpp"
#include "usph/specfun.hpp"
#include "usph/sweep.hpp"

namespace usph {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return std::string(buf);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// int Y^2 dx = 1 for every pair with ell <= 60, n = 2 ceil(ell) + 16 nodes.
// Odd 2m: the trapezoid rule in theta is exact. Even 2m: Y^2 is a plain
// polynomial in x and the trapezoid rule is not exact, so the
// Clenshaw-Curtis weights on the same nodes are used instead.
CheckResult normalization_suite() {
    CheckResult r;
    std::map<int, QuadratureRule> trap_cache, cc_cache;
    double worst = 0.0;
    IndexPair worst_p{};
    std::int64_t n_pairs = 0;
    for (std::int64_t tl = 1; tl <= 120; ++tl) {
        const int n = static_cast<int>(2 * ((tl + 1) / 2) + 16);
        for (std::int64_t tm = tl - 1; tm >= 0; tm -= 2) {
            const IndexPair p{HalfInt::from_twice(tl), HalfInt::from_twice(tm)};
            const bool odd_tm = (tm % 2 != 0);
            auto& cache = odd_tm ? trap_cache : cc_cache;
            auto it = cache.find(n);
            if (it == cache.end())
                it = cache.emplace(n, odd_tm ? theta_trapezoid(n) : clenshaw_curtis(n)).first;
            const QuadratureRule& rule = it->second;
            double s = 0.0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                const double Y = eval_Y(p, EvalPoint::from_x(rule.nodes[k]));
                s += rule.weights[k] * Y * Y;
            }
            const double err = std::fabs(s - 1.0);
            if (err > worst) {
                worst = err;
                worst_p = p;
            }
            ++n_pairs;
        }
    }
    r.pass = worst <= 1e-8;
    r.detail = fmt("%lld pairs with ell<=60: worst |int Y^2 dx - 1| = %.3g at %s (tol 1e-8)",
                   static_cast<long long>(n_pairs), worst, worst_p.str().c_str());
    return r;
}

// sum_m X^2 dim/sigma telescopes to dim(H^ell(S^d))/sigma_d, independent of x
CheckResult projection_suite() {
    CheckResult r;
    const double xs[7] = {0.0, 0.3, -0.3, 0.9, -0.9, 0.999, -0.999};
    double worst_rel = 0.0, worst_spread = 0.0;
    int worst_d = 0;
    HalfInt worst_ell;
    for (int d = 2; d <= 5; ++d) {
        for (int k = 0; k <= 30; ++k) {
            const HalfInt ell = HalfInt::from_twice((d - 1) + 2 * k);
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            double rhs = 0.0;
            for (const double x : xs) {
                const auto [l, rr] = projection_identity_check(d, ell, x);
                rhs = rr;
                const double rel = std::fabs(l - rr) / rr;
                if (rel > worst_rel) {
                    worst_rel = rel;
                    worst_d = d;
                    worst_ell = ell;
                }
                lo = std::min(lo, l);
                hi = std::max(hi, l);
            }
            worst_spread = std::max(worst_spread, (hi - lo) / rhs);
        }
    }
    r.pass = worst_rel <= 1e-8 && worst_spread <= 1e-8;
    r.detail = fmt("d=2..5, 31 ell each, 7 x: worst rel err %.3g (d=%d, ell=%s), worst x-spread %.3g (tol 1e-8)",
                   worst_rel, worst_d, worst_ell.str().c_str(), worst_spread);
    return r;
}

// int Y_{ell,m} Y_{ell',m} dx = 0 for ell != ell' <= 40, every admissible m;
// one 96-node rule is exact for every product in range
CheckResult orthogonality_suite() {
    CheckResult r;
    const int n = 2 * 40 + 16;
    const QuadratureRule rule_trap = theta_trapezoid(n);
    const QuadratureRule rule_cc = clenshaw_curtis(n);
    double worst = 0.0;
    std::int64_t worst_tm = 0, worst_j1 = 0, worst_j2 = 0, n_pairs = 0;
    std::vector<double> buf;
    for (std::int64_t tm = 0; tm <= 79; ++tm) {
        const std::int64_t jmax = (80 - tm - 1) / 2;
        if (jmax < 1) continue;
        const QuadratureRule& rule = (tm % 2 != 0) ? rule_trap : rule_cc;
        const YRow row(HalfInt::from_twice(tm), jmax);
        std::vector<std::vector<double>> G(static_cast<std::size_t>(jmax + 1),
                                           std::vector<double>(static_cast<std::size_t>(jmax + 1), 0.0));
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            row.eval(EvalPoint::from_x(rule.nodes[k]), buf);
            const double w = rule.weights[k];
            for (std::int64_t j1 = 0; j1 < jmax; ++j1)
                for (std::int64_t j2 = j1 + 1; j2 <= jmax; ++j2)
                    G[static_cast<std::size_t>(j1)][static_cast<std::size_t>(j2)] +=
                        w * buf[static_cast<std::size_t>(j1)] * buf[static_cast<std::size_t>(j2)];
        }
        for (std::int64_t j1 = 0; j1 < jmax; ++j1)
            for (std::int64_t j2 = j1 + 1; j2 <= jmax; ++j2) {
                const double v = std::fabs(G[static_cast<std::size_t>(j1)][static_cast<std::size_t>(j2)]);
                ++n_pairs;
                if (v > worst) {
                    worst = v;
                    worst_tm = tm;
                    worst_j1 = j1;
                    worst_j2 = j2;
                }
            }
    }
    r.pass = worst <= 1e-8;
    r.detail = fmt("%lld (ell,ell') pairs, ell,ell'<=40: worst |int Y Y' dx| = %.3g at m=%s, ell=%s, ell'=%s (tol 1e-8)",
                   static_cast<long long>(n_pairs), worst, HalfInt::from_twice(worst_tm).str().c_str(),
                   HalfInt::from_twice(worst_tm + 2 * worst_j1 + 1).str().c_str(),
                   HalfInt::from_twice(worst_tm + 2 * worst_j2 + 1).str().c_str());
    return r;
}

// Y(-x) = (-1)^j Y(x) on random pairs and abscissae
CheckResult parity_suite() {
    CheckResult r;
    std::mt19937 rng(987654321u);
    std::uniform_int_distribution<std::int64_t> tl_dist(1, 1000);
    std::uniform_real_distribution<double> x_dist(-1.0, 1.0);
    double worst = 0.0;
    IndexPair worst_p{};
    for (int i = 0; i < 10000; ++i) {
        const std::int64_t tl = tl_dist(rng);
        std::uniform_int_distribution<std::int64_t> k_dist(0, (tl - 1) / 2);
        const std::int64_t tm = tl - 1 - 2 * k_dist(rng);
        const IndexPair p{HalfInt::from_twice(tl), HalfInt::from_twice(tm)};
        const double x = x_dist(rng);
        const double yp = eval_Y(p, EvalPoint::from_x(x));
        const double ym = eval_Y(p, EvalPoint::from_x(-x));
        const double sign = (p.degree() % 2 == 0) ? 1.0 : -1.0;
        const double scale = std::max({std::fabs(yp), std::fabs(ym), 1e-300});
        const double err = std::fabs(ym - sign * yp) / scale;
        if (err > worst) {
            worst = err;
            worst_p = p;
        }
    }
    r.pass = worst <= 1e-12;
    r.detail = fmt("10000 random samples, ell up to 500: worst relative mismatch %.3g at %s (tol 1e-12)",
                   worst, worst_p.str().c_str());
    return r;
}

// sup-ratio stability under doubling of the ell range, d=2, epsilon=1/2.
// R_H uses the bare main factor |Y| (1/ell + |x^2-a^2|)^{1/4} over the
// m >= ell/2 pairs; R_B uses bessel_envelope over the m <= ell/2 pairs.
CheckResult envelope_stability_suite() {
    CheckResult r;
    const auto t0 = std::chrono::steady_clock::now();
    const RegimeParams rp{};
    // x >= 0 half of the 2001-point Chebyshev grid: every quantity below is
    // even in x, so the sup over the half equals the sup over the whole grid
    std::vector<EvalPoint> pts;
    pts.reserve(1001);
    for (int k = 0; k <= 1000; ++k) pts.push_back(EvalPoint::from_theta(k * kPi / 2000.0));

    double rh200 = 0.0, rh400 = 0.0, rb200 = 0.0, rb400 = 0.0;
    bool all_finite = true;
    std::vector<double> buf;
    for (std::int64_t tm = 0; tm <= 798; tm += 2) { // integer m only in I_2
        const std::int64_t jmax = (798 - tm) / 2;   // 2*ell = tm + 2j + 1 <= 799
        const YRow row(HalfInt::from_twice(tm), jmax);
        for (const EvalPoint& pt : pts) {
            row.eval(pt, buf);
            const double x2 = pt.x * pt.x;
            for (std::int64_t j = 0; j <= jmax; ++j) {
                const std::int64_t tl = tm + 2 * j + 1;
                const double ay = std::fabs(buf[static_cast<std::size_t>(j)]);
                if (!std::isfinite(ay)) {
                    all_finite = false;
                    continue;
                }
                double f = 0.0;
                if (tm >= 2 * j + 1) { // m >= ell/2
                    const double tld = static_cast<double>(tl);
                    const double a2 = static_cast<double>(tl * tl - tm * tm) / (tld * tld);
                    f = ay * std::sqrt(std::sqrt(2.0 / tld + std::fabs(x2 - a2)));
                } else { // m <= ell/2
                    const IndexPair p{HalfInt::from_twice(tl), HalfInt::from_twice(tm)};
                    const double env = bessel_envelope(2, p, pt, rp);
                    if (std::isinf(env))
                        f = 0.0;
                    else if (env == 0.0)
                        f = (ay == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
                    else
                        f = ay / env;
                    if (f > rb400) rb400 = f;
                    if (tl <= 399 && f > rb200) rb200 = f;
                    continue;
                }
                if (f > rh400) rh400 = f;
                if (tl <= 399 && f > rh200) rh200 = f;
            }
        }
    }
    const double elapsed = seconds_since(t0);
    r.pass = all_finite && rh400 < 100.0 && rb400 < 100.0 && rh400 <= 1.1 * rh200 &&
             rb400 <= 1.1 * rb200 && elapsed < 120.0;
    r.detail = fmt("R_H: L=200 %.4f -> L=400 %.4f; R_B: %.4f -> %.4f (growth caps 1.1, value caps 100); %s; %.1fs",
                   rh200, rh400, rb200, rb400, all_finite ? "all finite" : "NON-FINITE VALUES", elapsed);
    return r;
}

// sup of nu^{1/3} |J_nu(z)| over nu = 1, 3/2, ..., 200 and z = 0..500 step 0.05
CheckResult bessel_order_scan_suite() {
    CheckResult r;
    const auto t0 = std::chrono::steady_clock::now();
    double sup = 0.0, arg_nu = 0.0, arg_z = 0.0;
    for (int zi = 0; zi <= 10000; ++zi) {
        const double z = 0.05 * zi;
        const std::vector<double> whole = bessel_j_row(1.0, 200, z);
        const std::vector<double> half = bessel_j_row(1.5, 199, z);
        for (int k = 0; k < 200; ++k) {
            const double nu = 1.0 + k;
            const double f = std::cbrt(nu) * std::fabs(whole[static_cast<std::size_t>(k)]);
            if (f > sup) {
                sup = f;
                arg_nu = nu;
                arg_z = z;
            }
        }
        for (int k = 0; k < 199; ++k) {
            const double nu = 1.5 + k;
            const double f = std::cbrt(nu) * std::fabs(half[static_cast<std::size_t>(k)]);
            if (f > sup) {
                sup = f;
                arg_nu = nu;
                arg_z = z;
            }
        }
    }
    const double elapsed = seconds_since(t0);
    r.pass = sup <= 0.7 && elapsed < 60.0;
    r.detail = fmt("sup nu^{1/3}|J_nu(z)| = %.6f at (nu=%.1f, z=%.2f) over 399 orders x 10001 arguments (cap 0.7); %.1fs",
                   sup, arg_nu, arg_z, elapsed);
    return r;
}

// zeta(x): boundary value b^2 at x=a, strict decrease in x, sqrt(zeta) <= y
// past the turning point, and small closed-form-vs-quadrature residuals
CheckResult zeta_map_suite() {
    CheckResult r;
    double worst_res = 0.0, worst_bnd = 0.0;
    std::int64_t n_pairs = 0, mono_bad = 0, dom_bad = 0;
    for (std::int64_t tl = 2; tl <= 160; ++tl) {
        for (std::int64_t tm = (tl % 2 == 0) ? 1 : 2; 2 * tm <= tl; tm += 2) {
            const IndexPair p{HalfInt::from_twice(tl), HalfInt::from_twice(tm)};
            const TransitionData ta = transition_points(p);
            const ZetaSolution zb = zeta_solve(p, ta.a);
            worst_bnd = std::max(worst_bnd, std::fabs(zb.zeta - ta.b * ta.b));
            worst_res = std::max(worst_res, zb.residual);
            double prev = std::numeric_limits<double>::infinity();
            for (int k = 0; k < 200; ++k) {
                const double x = k / 200.0;
                const ZetaSolution zs = zeta_solve(p, x);
                worst_res = std::max(worst_res, zs.residual);
                if (!(zs.zeta < prev)) ++mono_bad;
                prev = zs.zeta;
                if (x > ta.a) {
                    // sqrt(zeta) <= y with a hair of float slack: both sides
                    // agree to rounding when the grid hits x = a exactly
                    const double y = std::sqrt((1.0 - x) * (1.0 + x));
                    if (!(std::sqrt(std::max(zs.zeta, 0.0)) <= y + 1e-13)) ++dom_bad;
                }
            }
            ++n_pairs;
        }
    }
    r.pass = worst_bnd <= 1e-10 && worst_res <= 1e-10 && mono_bad == 0 && dom_bad == 0;
    r.detail = fmt("%lld pairs (0<m<=ell/2, ell<=80), 200-pt grids: worst |zeta(a)-b^2| = %.3g, worst residual %.3g (tol 1e-10), %lld monotonicity / %lld domination violations",
                   static_cast<long long>(n_pairs), worst_bnd, worst_res,
                   static_cast<long long>(mono_bad), static_cast<long long>(dom_bad));
    return r;
}

// the L'' = QL machinery: Richardson residual everywhere, decay sign and
// Titchmarsh comparison past the turning point, |L| decreasing toward x=1
CheckResult ode_checks_suite() {
    CheckResult r;
    double worst_res = 0.0;
    IndexPair worst_p{};
    double worst_x = 0.0;
    for (std::int64_t tl = 4; tl <= 200; ++tl) {
        for (std::int64_t tm = (tl % 2 == 0) ? 3 : 4; tm < tl; tm += 2) {
            const IndexPair p{HalfInt::from_twice(tl), HalfInt::from_twice(tm)};
            for (int i = 0; i <= 20; ++i) {
                const double x = -0.999 + i * (1.998 / 20.0);
                const double res = ode_residual_extrapolated(p, x, ode_step(x));
                if (res > worst_res) {
                    worst_res = res;
                    worst_p = p;
                    worst_x = x;
                }
            }
        }
    }
    std::int64_t sgn_ok = 0, sgn_skip = 0, sgn_bad = 0, tit_bad = 0, dec_bad = 0;
    double worst_tit = 0.0;
    const double fpos[4][2] = {{0.25, 0.5}, {0.25, 0.9}, {0.5, 0.75}, {0.75, 0.9}};
    for (std::int64_t tl = 4; tl <= 200; ++tl) {
        for (std::int64_t tm = (tl % 2 == 0) ? 3 : 4; tm < tl; tm += 2) {
            if (2 * tm < tl) continue; // m >= ell/2 only
            const IndexPair p{HalfInt::from_twice(tl), HalfInt::from_twice(tm)};
            const TransitionData ta = transition_points(p);
            const double xb = *ta.xbar;
            const double span = (1.0 - 1e-4) - xb;
            for (int i = 1; i <= 50; ++i) {
                const auto s = sign_check(p, xb + i * span / 51.0);
                if (!s)
                    ++sgn_skip;
                else if (*s)
                    ++sgn_ok;
                else
                    ++sgn_bad;
            }
            for (const auto& fp : fpos) {
                const auto [lhs, rhs] = titchmarsh_check(p, xb + fp[0] * span, xb + fp[1] * span);
                if (lhs > rhs * (1.0 + 1e-6)) ++tit_bad;
                if (rhs > 0.0) worst_tit = std::max(worst_tit, lhs / rhs);
            }
            double prev = std::numeric_limits<double>::infinity();
            for (int k = 2; k <= 6; ++k) {
                const double lk = std::fabs(eval_L(p, 1.0 - std::pow(10.0, -k)));
                if (!(lk < prev)) ++dec_bad;
                prev = lk;
            }
        }
    }
    r.pass = worst_res <= 1e-3 && sgn_bad == 0 && tit_bad == 0 && dec_bad == 0;
    r.detail = fmt("Richardson worst %.2e at %s, x=%.3f (tol 1e-3); sign %lld ok / %lld bad / %lld skipped; Titchmarsh worst lhs/rhs %.3g, %lld over slack; %lld decay violations",
                   worst_res, worst_p.str().c_str(), worst_x, static_cast<long long>(sgn_ok),
                   static_cast<long long>(sgn_bad), static_cast<long long>(sgn_skip), worst_tit,
                   static_cast<long long>(tit_bad), static_cast<long long>(dec_bad));
    return r;
}

// a strictly positive decay rate is fitted on the far region |x| >= K a
CheckResult decay_fit_suite() {
    CheckResult r;
    const FitResult fr = fit_decay_constant(2, HalfInt(200), 0.5, 2.0);
    r.pass = !fr.region_empty && fr.c > 0.0;
    r.detail = fmt("d=2, ell<=200, epsilon=1/2, K=2: fitted c = %.4f, C = %.4g over %lld samples%s",
                   fr.c, fr.big_C, static_cast<long long>(fr.samples),
                   fr.region_empty ? " (REGION EMPTY)" : "");
    return r;
}

// one config, two worker counts, byte-identical reports (wall time masked)
CheckResult sweep_determinism_suite() {
    CheckResult r;
    SweepConfig cfg;
    cfg.d_list = {2, 3};
    cfg.ell_max = HalfInt::from_twice(13);
    cfg.x_grid_size = 41;
    cfg.parallelism = 1;
    const SweepReport r1 = run_sweep(cfg);
    cfg.parallelism = 8;
    const SweepReport r8 = run_sweep(cfg);
    const std::string j1 = r1.to_json(false);
    const std::string j8 = r8.to_json(false);
    const bool equal = (j1 == j8);
    r.pass = equal && r1.pass() && r8.pass();
    r.detail = fmt("%zu pair records, %zu-byte reports: parallelism 1 vs 8 %s; in-sweep suites %s/%s",
                   r1.per_pair.size(), j1.size(), equal ? "byte-identical" : "DIFFER",
                   r1.pass() ? "pass" : "FAIL", r8.pass() ? "pass" : "FAIL");
    return r;
}

using SuiteFn = CheckResult (*)();

struct SuiteEntry {
    const char* name;
    SuiteFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"normalization", normalization_suite},
    {"projection", projection_suite},
    {"orthogonality", orthogonality_suite},
    {"parity", parity_suite},
    {"envelope-stability", envelope_stability_suite},
    {"bessel-order-scan", bessel_order_scan_suite},
    {"zeta-map", zeta_map_suite},
    {"ode-checks", ode_checks_suite},
    {"decay-fit", decay_fit_suite},
    {"sweep-determinism", sweep_determinism_suite},
};

} // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const SuiteEntry& e : kSuites) out.emplace_back(e.name);
    return out;
}

CheckResult run_suite(const std::string& name) {
    for (const SuiteEntry& e : kSuites) {
        if (name != e.name) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r = e.fn();
        r.name = e.name;
        r.elapsed_s = seconds_since(t0);
        return r;
    }
    throw index_error("unknown suite: " + name);
}

std::vector<CheckResult> run_all_suites() {
    std::vector<CheckResult> out;
    out.reserve(std::size(kSuites));
    for (const SuiteEntry& e : kSuites) out.push_back(run_suite(e.name));
    return out;
}

} // namespace usph
