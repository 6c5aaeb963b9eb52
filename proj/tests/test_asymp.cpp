// the implicit zeta change of variables and the ODE-based decay checks
#include <cmath>
#include <random>

#include "doctest.h"
#include "reference_tables.hpp"
#include "usph/asymp.hpp"
#include "usph/errors.hpp"
#include "usph/index.hpp"
#include "usph/specfun.hpp"

using namespace usph;
namespace refs = usph_test_refs;

namespace {

IndexPair make_pair(std::int64_t tl, std::int64_t tm) {
    return {HalfInt::from_twice(tl), HalfInt::from_twice(tm)};
}

// closed forms of the right-hand sides, derived once by hand (they rely on
// a^2 + b^2 = 1, which holds for every pair):
//   int_x^a sqrt(a^2-s^2)/(1-s^2) ds
//     = pi/2 - asin(x/a) - b (pi/2 - atan(b x / sqrt(a^2-x^2)))
//   int_a^x sqrt(s^2-a^2)/(1-s^2) ds
//     = b atanh(U / (b sqrt(U^2+a^2))) - asinh(U/a),  U = sqrt(x^2-a^2)
double rhs_upper_closed(double a, double b, double x) {
    const double pi = 3.14159265358979323846;
    if (x >= a) return 0.0;
    return pi / 2 - std::asin(x / a) -
           b * (pi / 2 - std::atan(b * x / std::sqrt(a * a - x * x)));
}

double rhs_lower_closed(double a, double b, double x) {
    const double u = std::sqrt((x - a) * (x + a));
    return b * std::atanh(u / (b * std::sqrt(u * u + a * a))) - std::asinh(u / a);
}

} // namespace

TEST_CASE("zeta solver against frozen references") {
    for (const auto& r : refs::kZetaRefs) {
        const auto s = zeta_solve(make_pair(r.two_ell, r.two_m), r.x);
        INFO("pair (", r.two_ell, "/2, ", r.two_m, "/2), x = ", r.x);
        CHECK(std::fabs(s.zeta - r.zeta) <= 1e-12 * std::max(1.0, std::fabs(r.zeta)));
        CHECK(s.residual <= 1e-10);
    }
}

TEST_CASE("zeta boundary behavior") {
    for (auto [tl, tm] : {std::pair<std::int64_t, std::int64_t>{10, 3},
                          {25, 6},
                          {161, 40}}) {
        const auto p = make_pair(tl, tm);
        const auto t = transition_points(p);

        // the turning point maps to b^2
        const auto at_a = zeta_solve(p, t.a);
        CHECK(std::fabs(at_a.zeta - t.b * t.b) <= 1e-12);

        // x = 1 maps to 0 exactly
        const auto at_1 = zeta_solve(p, 1.0);
        CHECK(at_1.zeta == 0.0);
        CHECK(at_1.residual == 0.0);

        // the two branches meet continuously
        const double lo = zeta_solve(p, t.a - 1e-9).zeta;
        const double hi = zeta_solve(p, t.a + 1e-9).zeta;
        CHECK(std::fabs(lo - hi) <= 1e-7);
    }
}

TEST_CASE("zeta solver rejects bad inputs") {
    CHECK_THROWS_AS(zeta_solve(make_pair(1, 0), 0.5), domain_error);   // m = 0
    CHECK_THROWS_AS(zeta_solve(make_pair(5, 4), 0.5), regime_error);   // m > eps*ell
    CHECK_THROWS_AS(zeta_solve(make_pair(10, 3), 1.5), domain_error);  // x out of range
    CHECK_THROWS_AS(zeta_solve({HalfInt(2), HalfInt(1)}, 0.5), index_error);
}

TEST_CASE("closed-form antiderivatives match direct quadrature") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> b_dist(0.05, 0.95);
    std::uniform_real_distribution<double> up_dist(0.0, 4.0);
    std::uniform_real_distribution<double> lo_dist(0.01, 0.999);

    for (int trial = 0; trial < 20; ++trial) {
        const double b = b_dist(rng);
        const double b2 = b * b;

        // upper: int_{b^2}^{zeta} sqrt(xi - b^2)/(2 xi) dxi, including two
        // points deep inside the small-deviation series window
        const double zu = trial < 2 ? b2 * (1.0 + 5e-3) : b2 * (1.0 + up_dist(rng));
        const double want_u = integrate(
            [&](double xi) { return std::sqrt(std::max(xi - b2, 0.0)) / (2.0 * xi); }, b2,
            zu, 1e-13);
        INFO("b = ", b, ", zeta = ", zu);
        CHECK(std::fabs(detail::zeta_lhs_upper(zu, b2) - want_u) <=
              1e-12 * (1.0 + std::fabs(want_u)));

        // lower: int_{zeta}^{b^2} sqrt(b^2 - xi)/(2 xi) dxi
        const double zl = trial < 2 ? b2 * (1.0 - 5e-3) : b2 * lo_dist(rng);
        const double want_l = integrate(
            [&](double xi) { return std::sqrt(std::max(b2 - xi, 0.0)) / (2.0 * xi); }, zl,
            b2, 1e-13);
        INFO("b = ", b, ", zeta = ", zl);
        CHECK(std::fabs(detail::zeta_lhs_lower(zl, b2) - want_l) <=
              1e-12 * (1.0 + std::fabs(want_l)));
    }
}

TEST_CASE("quadrature right-hand sides match their closed forms") {
    for (auto [tl, tm] : {std::pair<std::int64_t, std::int64_t>{10, 3},
                          {25, 6},
                          {161, 40}}) {
        const auto p = make_pair(tl, tm);
        const auto t = transition_points(p);
        for (double f : {0.0, 0.3, 0.77, 0.998}) {
            const double x = f * t.a;
            const double want = rhs_upper_closed(t.a, t.b, x);
            INFO("pair ", p.str(), ", x = ", x);
            CHECK(std::fabs(detail::zeta_rhs_upper(p, x) - want) <=
                  1e-11 * (1.0 + std::fabs(want)));
        }
        for (double f : {0.3, 0.7, 0.999}) {
            const double x = t.a + f * (1.0 - t.a);
            const double want = rhs_lower_closed(t.a, t.b, x);
            INFO("pair ", p.str(), ", x = ", x);
            CHECK(std::fabs(detail::zeta_rhs_lower(p, x) - want) <=
                  1e-11 * (1.0 + std::fabs(want)));
        }
    }
}

TEST_CASE("claimed ratio near the turning point") {
    const auto p = make_pair(81, 20);
    const auto t = transition_points(p);

    // the ratio extends continuously through y = b: both sides agree to 10%
    const double below = claim_ratio(p, t.a - 0.005);
    const double above = claim_ratio(p, t.a + 0.005);
    CHECK(below > 0.0);
    CHECK(above > 0.0);
    CHECK(std::fabs(below - above) <= 0.1 * below);

    // outside the y-window the comparison is refused
    CHECK_THROWS_AS(claim_ratio(p, 0.2), domain_error);
}

TEST_CASE("L and its potential") {
    // (3/2, 1): L = c (1-x^2) solves L'' = QL with QL = -2c = -sqrt(3)
    const auto p = make_pair(3, 2);
    for (double x : {-0.8, -0.1, 0.45, 0.9}) {
        const auto pt = EvalPoint::from_x(x);
        CHECK(eval_L(p, x) == pt.y * eval_Y(p, pt));
        CHECK(q_eval(p, x) * eval_L(p, x) ==
              doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));
    }

    // the xbar-free and xbar forms agree where both are defined
    const auto p2 = make_pair(9, 4);
    for (double x : {0.0, 0.3, 0.8})
        CHECK(q_eval(p2, x) == doctest::Approx(q_factor(p2, x)).epsilon(1e-14));

    CHECK_THROWS_AS(q_eval(p, 1.0), domain_error);
}

TEST_CASE("ODE residuals") {
    // quadratic L: the central difference is exact up to rounding
    CHECK(ode_residual(make_pair(3, 2), 0.3, 1e-3) < 1e-8);

    // a mid-sized pair across the oscillatory region
    const auto p = make_pair(40, 23);
    CHECK(ode_residual_extrapolated(p, 0.5, ode_step(0.5)) < 1e-4);
    CHECK(ode_residual_extrapolated(p, 0.0, 1e-3) < 1e-4);

    // evenness: the residual is invariant under x -> -x
    CHECK(ode_residual(p, 0.5, 1e-3) == ode_residual(p, -0.5, 1e-3));

    CHECK_THROWS_AS(ode_residual(p, 0.3, 1e-7), domain_error);   // h too small
    CHECK_THROWS_AS(ode_residual(p, 0.3, 2e-3), domain_error);   // h too large
    CHECK_THROWS_AS(ode_residual(p, 0.9999, 1e-3), domain_error); // stencil exits
}

TEST_CASE("harness step size") {
    CHECK(ode_step(0.0) == 1e-3);
    CHECK(ode_step(0.999) == doctest::Approx(5e-5).epsilon(1e-15));
    CHECK(ode_step(0.9999999) == 1e-6);
    CHECK(ode_step(-0.999) == ode_step(0.999));
}

TEST_CASE("sign of L L' past the potential zero") {
    const auto p = make_pair(9, 8); // xbar = 1/2
    const auto s = sign_check(p, 0.8);
    REQUIRE(s.has_value());
    CHECK(*s == true); // |L| decays there

    // too close to the endpoint both factors underflow the signing threshold
    CHECK(!sign_check(p, 0.9999).has_value());

    CHECK_THROWS_AS(sign_check(make_pair(3, 2), 0.8), domain_error); // m <= 1
    CHECK_THROWS_AS(sign_check(p, 0.3), domain_error);               // x <= xbar
}

TEST_CASE("integrated decay comparison") {
    const auto p = make_pair(9, 8);
    for (auto [xs, xe] : {std::pair<double, double>{0.8, 0.9}, {0.8, 0.95}, {0.85, 0.95}}) {
        const auto [lhs, rhs] = titchmarsh_check(p, xs, xe);
        INFO("x_star = ", xs, ", x = ", xe);
        CHECK(lhs <= rhs * (1.0 + 1e-6));
    }

    // the comparison bound itself shrinks as x moves outward
    const double b1 = titchmarsh_check(p, 0.85, 0.9).second;
    const double b2 = titchmarsh_check(p, 0.85, 0.95).second;
    CHECK(b2 < b1);

    CHECK_THROWS_AS(titchmarsh_check(p, 0.9, 0.8), domain_error);
    CHECK_THROWS_AS(titchmarsh_check(make_pair(3, 2), 0.8, 0.9), domain_error);
}
