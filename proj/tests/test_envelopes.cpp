// regime-split envelopes and universal bounds: hand-computed spot values,
// shape relations, and symmetry
#include <cmath>

#include "doctest.h"
#include "usph/envelopes.hpp"
#include "usph/errors.hpp"
#include "usph/eval.hpp"
#include "usph/index.hpp"

using namespace usph;

namespace {

IndexPair make_pair(std::int64_t tl, std::int64_t tm) {
    return {HalfInt::from_twice(tl), HalfInt::from_twice(tm)};
}

} // namespace

TEST_CASE("hermite-side envelope spot values") {
    // (ell, m) = (21/2, 8) at x = 0: main branch only, since K*a > 1
    const double v = hermite_envelope(2, make_pair(21, 16), EvalPoint::from_x(0.0));
    CHECK(v == doctest::Approx(1.1806010987458639).epsilon(1e-14));

    // at the turning point x = a the main branch peaks at ell^{1/4}
    const auto p = make_pair(10, 5); // (5, 5/2), a^2 = 3/4
    const auto t = transition_points(p);
    const double peak = hermite_envelope(3, p, EvalPoint::from_x(t.a));
    CHECK(peak == doctest::Approx(std::pow(5.0, 0.25)).epsilon(1e-10));

    // (21/2, 10) at x = 0.8 sits past K*a, where the decay branch wins
    const double far = hermite_envelope(2, make_pair(21, 20), EvalPoint::from_x(0.8));
    CHECK(far == doctest::Approx(0.9777317306822074).epsilon(1e-13));
    // ... and the main branch alone would have been larger
    CHECK(far < 1.117045853879115 * (1.0 + 1e-12));
}

TEST_CASE("bessel-side envelope spot values") {
    // main branch, d = 2
    const double v = bessel_envelope(2, make_pair(9, 2), EvalPoint::from_x(0.8));
    CHECK(v == doctest::Approx(1.2313009817581055).epsilon(1e-13));

    // inner region y <= b/(2e): the dimensional cap takes over
    const auto inner = make_pair(20, 1); // (10, 1/2) in d = 3
    EvalPoint pt{std::sqrt(1.0 - 0.005 * 0.005), 0.005};
    const double cap = bessel_envelope(3, inner, pt);
    CHECK(cap == doctest::Approx(10.0 / std::sqrt(2.0)).epsilon(1e-13));

    // y = 0 diverges for d > 2 and stays finite for d = 2
    CHECK(std::isinf(bessel_envelope(3, inner, EvalPoint::from_x(1.0))));
    CHECK(std::isfinite(bessel_envelope(2, make_pair(9, 2), EvalPoint::from_x(1.0))));
}

TEST_CASE("envelopes are even in x") {
    const auto ph = make_pair(21, 16);
    const auto pb = make_pair(9, 2);
    for (double x : {0.15, 0.5, 0.93}) {
        CHECK(hermite_envelope(2, ph, EvalPoint::from_x(x)) ==
              hermite_envelope(2, ph, EvalPoint::from_x(-x)));
        CHECK(bessel_envelope(2, pb, EvalPoint::from_x(x)) ==
              bessel_envelope(2, pb, EvalPoint::from_x(-x)));
    }
}

TEST_CASE("small-y bound") {
    // (4, 1/2) at y = 1/16: b^{-(m+1/2)} (ye)^m = 2 sqrt(e)
    const auto p = make_pair(8, 1);
    EvalPoint pt{std::sqrt(1.0 - 1.0 / 256.0), 1.0 / 16.0};
    CHECK(exp_small_y_bound(p, pt) == doctest::Approx(3.2974425414002564).epsilon(1e-14));

    // m = 0 degenerates to the constant sqrt(ell)
    CHECK(exp_small_y_bound(make_pair(9, 0), EvalPoint::from_x(0.99)) ==
          doctest::Approx(std::sqrt(4.5)).epsilon(1e-15));

    // monotone increasing in y while y stays small
    double prev = 0.0;
    for (double y : {0.01, 0.02, 0.04, 0.08}) {
        const double v = exp_small_y_bound(p, EvalPoint{std::sqrt(1.0 - y * y), y});
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("universal bound is the min of its two shapes") {
    // (3, 3/2) at x = 0: parity shape wins
    const auto p = make_pair(6, 3);
    const auto pt = EvalPoint::from_x(0.0);
    CHECK(universal_bound(p, pt) == doctest::Approx(1.5650845800732873).epsilon(1e-14));
    CHECK(universal_bound_dim(p, pt) == doctest::Approx(2.7548986159937194).epsilon(1e-13));

    for (std::int64_t tl : {3, 8, 31}) {
        for (std::int64_t tm = tl - 1; tm >= 0; tm -= 2) {
            for (double x : {0.0, 0.35, 0.92}) {
                const auto q = make_pair(tl, tm);
                const auto e = EvalPoint::from_x(x);
                INFO("pair ", q.str(), ", x = ", x);
                CHECK(universal_bound(q, e) ==
                      std::min(universal_bound_dim(q, e), universal_bound_parity(q, e)));
            }
        }
    }
}

TEST_CASE("envelopes actually dominate the profiles they bound") {
    // a cheap version of the large-scale stability suite: fixed small pairs,
    // moderate grid, strict domination with the frozen constant 1.2
    for (std::int64_t tl : {9, 21, 45}) {
        for (std::int64_t tm = 0; tm < tl; tm += 2) {
            const auto p = make_pair(tl, tm);
            const bool hermite_side = 2 * tm >= tl;
            for (int k = 0; k <= 40; ++k) {
                const auto pt = EvalPoint::from_theta(3.14159265358979323846 * k / 40.0);
                const double xv = eval_X(2, p, pt);
                const double env = hermite_side ? hermite_envelope(2, p, pt)
                                                : bessel_envelope(2, p, pt);
                INFO("pair ", p.str(), ", x = ", pt.x);
                CHECK(std::fabs(xv) <= 1.2 * env);
            }
        }
    }
}
