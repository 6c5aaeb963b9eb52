// profile evaluation: jacobi recurrence, normalization, parity, and the
// d-dimensional rescaling, against frozen references and local re-derivations
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "reference_tables.hpp"
#include "usph/errors.hpp"
#include "usph/eval.hpp"
#include "usph/specfun.hpp"

using namespace usph;
namespace refs = usph_test_refs;

namespace {

IndexPair make_pair(std::int64_t tl, std::int64_t tm) {
    return {HalfInt::from_twice(tl), HalfInt::from_twice(tm)};
}

// plain double recurrence, no rescaling; valid while nothing overflows
double jacobi_naive(std::int64_t j, double alpha, double x) {
    double p0 = 1.0, p1 = (alpha + 1.0) * x;
    if (j == 0) return p0;
    for (std::int64_t n = 2; n <= j; ++n) {
        const double na = static_cast<double>(n) + alpha;
        const double next = (na * ((2.0 * na - 1.0) * x * p1 - (na - 1.0) * p0)) /
                            (static_cast<double>(n) * (static_cast<double>(n) + 2.0 * alpha));
        p0 = p1;
        p1 = next;
    }
    return p1;
}

} // namespace

TEST_CASE("eval points") {
    const auto p = EvalPoint::from_x(0.6);
    CHECK(p.x == 0.6);
    CHECK(p.y == doctest::Approx(0.8).epsilon(1e-15));

    const auto q = EvalPoint::from_theta(1.5707963267948966);
    CHECK(std::fabs(q.x) < 1e-15);
    CHECK(q.y == 1.0);

    CHECK_THROWS_AS(EvalPoint::from_x(1.0000001), domain_error);
    CHECK_THROWS_AS(EvalPoint::from_theta(-0.1), domain_error);
    CHECK_THROWS_AS(EvalPoint::from_theta(3.2), domain_error);

    // the two branches of log(1-x^2) agree around the crossover
    for (double x : {0.69, 0.7, 0.71, 0.9}) {
        const double got = EvalPoint::from_x(x).log1mx2();
        const double want = std::log((1.0 - x) * (1.0 + x));
        CHECK(std::fabs(got - want) <= 1e-14 * std::fabs(want));
    }
    CHECK(EvalPoint::from_x(1.0).log1mx2() ==
          -std::numeric_limits<double>::infinity());
}

TEST_CASE("symmetric jacobi low degrees in closed form") {
    CHECK(jacobi_symmetric(0, HalfInt(0), 0.37).to_double() == 1.0);
    // P_1^(a,a)(x) = (a+1) x
    CHECK(jacobi_symmetric(1, HalfInt::from_twice(3), 0.4).to_double() ==
          doctest::Approx(2.5 * 0.4).epsilon(1e-15));
    // legendre P_2
    CHECK(jacobi_symmetric(2, HalfInt(0), 0.3).to_double() ==
          doctest::Approx((3.0 * 0.09 - 1.0) / 2.0).epsilon(1e-14));

    CHECK_THROWS_AS(jacobi_symmetric(-1, HalfInt(0), 0.0), domain_error);
    CHECK_THROWS_AS(jacobi_symmetric(2, HalfInt(0), 1.5), domain_error);
}

TEST_CASE("rescaled recurrence matches the naive one where both are exact") {
    for (double alpha : {0.0, 1.5, 7.0}) {
        for (double x : {-0.9, -0.3, 0.2, 0.8}) {
            for (std::int64_t j : {5, 23, 60}) {
                const double want = jacobi_naive(j, alpha, x);
                const double got =
                    jacobi_symmetric(j, HalfInt::from_twice(std::llround(2 * alpha)), x)
                        .to_double();
                INFO("alpha = ", alpha, ", x = ", x, ", j = ", j);
                CHECK(std::fabs(got - want) <= 1e-11 * std::max(1.0, std::fabs(want)));
            }
        }
    }
    // degrees far beyond anything the naive recurrence survives
    CHECK(std::isfinite(jacobi_symmetric(3000, HalfInt(0), 0.123).to_double()));
}

TEST_CASE("profile values against frozen references") {
    for (const auto& r : refs::kYRefs) {
        const double got = eval_Y(make_pair(r.two_ell, r.two_m), EvalPoint::from_x(r.x));
        INFO("pair (", r.two_ell, "/2, ", r.two_m, "/2), x = ", r.x);
        if (r.value == 0.0) {
            CHECK(got == 0.0); // parity zeros are exact in the recurrence
        } else {
            CHECK(std::fabs(got - r.value) <= 1e-11 * std::fabs(r.value));
        }
    }
}

TEST_CASE("normalization of a sample profile by direct quadrature") {
    const auto p = make_pair(21, 16);
    const double total = integrate(
        [&](double x) {
            const double v = eval_Y(p, EvalPoint::from_x(x));
            return v * v;
        },
        -1.0, 1.0, 1e-12);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("parity under x -> -x") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<std::int64_t> tl_dist(1, 400);
    std::uniform_real_distribution<double> x_dist(-1.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::int64_t tl = tl_dist(rng);
        std::uniform_int_distribution<std::int64_t> k_dist(0, (tl - 1) / 2);
        const std::int64_t tm = tl - 1 - 2 * k_dist(rng);
        const auto p = make_pair(tl, tm);
        const double x = x_dist(rng);
        const double yp = eval_Y(p, EvalPoint::from_x(x));
        const double ym = eval_Y(p, EvalPoint::from_x(-x));
        const double sign = p.degree() % 2 == 0 ? 1.0 : -1.0;
        const double scale = std::max({std::fabs(yp), std::fabs(ym), 1e-300});
        INFO("pair ", p.str(), ", x = ", x);
        CHECK(std::fabs(ym - sign * yp) <= 1e-12 * scale);
    }
}

TEST_CASE("row evaluation is consistent with the scalar path") {
    const HalfInt m = HalfInt::from_twice(3);
    const YRow row(m, 25);
    CHECK(row.j_max() == 25);
    CHECK(row.m() == m);

    std::vector<double> out;
    const auto pt = EvalPoint::from_x(0.37);
    row.eval(pt, out);
    REQUIRE(out.size() == 26);
    for (std::int64_t j = 0; j <= 25; ++j) {
        const IndexPair p{HalfInt::from_twice(3 + 2 * j + 1), m};
        const double want = eval_Y(p, pt);
        INFO("j = ", j);
        CHECK(std::fabs(out[static_cast<std::size_t>(j)] - want) <=
              1e-13 * std::max(1.0, std::fabs(want)));
        CHECK(row.log_c(j) == doctest::Approx(norm_const(p).log_mag).epsilon(1e-14));
    }
}

TEST_CASE("d-dimensional profile X") {
    // d = 2 is the identity rescaling
    const auto p2 = make_pair(9, 4);
    for (double x : {0.0, 0.4, 0.95}) {
        const auto pt = EvalPoint::from_x(x);
        CHECK(eval_X(2, p2, pt) == eval_Y(p2, pt));
    }

    // m = (d-2)/2 in d = 3: the weight cancels and X is the bare polynomial;
    // for ell = 1 that is the constant sqrt(2/pi)
    const auto p3 = IndexPair{HalfInt(1), HalfInt::from_twice(1)};
    for (double x : {0.0, 0.3, 1.0}) {
        const double v = eval_X(3, p3, EvalPoint::from_x(x));
        CHECK(v == doctest::Approx(0.7978845608028654).epsilon(1e-14));
    }

    // m < (d-2)/2 has a genuine pole at the endpoints
    CHECK_THROWS_AS(eval_X(4, make_pair(7, 0), EvalPoint::from_x(1.0)), pole_error);
    // m > (d-2)/2 vanishes there
    CHECK(eval_X(4, make_pair(7, 4), EvalPoint::from_x(-1.0)) == 0.0);

    // normalization carries over: int X^2 (1-x^2)^{(d-2)/2} dx = 1
    const auto p4 = make_pair(7, 4);
    const double total = integrate(
        [&](double x) {
            const double v = eval_X(4, p4, EvalPoint::from_x(x));
            return v * v * (1.0 - x * x);
        },
        -1.0, 1.0, 1e-12);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(eval_X(1, p2, EvalPoint::from_x(0.0)), domain_error);
    CHECK_THROWS_AS(eval_X(2, {HalfInt(2), HalfInt(1)}, EvalPoint::from_x(0.0)),
                    index_error);
}

TEST_CASE("profile endpoint values") {
    // m = 0: Y(+-1) = c * P_j(+-1), no weight factor
    const auto p = make_pair(5, 0);
    const double v1 = eval_Y(p, EvalPoint::from_x(1.0));
    CHECK(std::isfinite(v1));
    CHECK(v1 != 0.0);
    // m > 0: the weight kills the endpoint
    CHECK(eval_Y(make_pair(5, 2), EvalPoint::from_x(1.0)) == 0.0);
}
