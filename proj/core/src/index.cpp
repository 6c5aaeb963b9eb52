// index enumeration, transition points, and exact spectral quantities

#include "usph/index.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "usph/specfun.hpp"

namespace usph {

std::string HalfInt::str() const {
    if (is_whole()) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

std::optional<HalfInt> parse_half(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const auto parse_i64 = [](std::string_view v) -> std::optional<std::int64_t> {
        std::int64_t out = 0;
        const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || p != v.data() + v.size()) return std::nullopt;
        return out;
    };
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const auto num = parse_i64(std::string_view(s).substr(0, slash));
        const auto den = parse_i64(std::string_view(s).substr(slash + 1));
        if (!num || !den || (*den != 1 && *den != 2)) return std::nullopt;
        return HalfInt::from_twice(*den == 2 ? *num : 2 * *num);
    }
    if (s.find('.') != std::string::npos) {
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size()) return std::nullopt;
        const double t = 2.0 * v;
        if (std::fabs(t - std::llround(t)) > 1e-9) return std::nullopt;
        return HalfInt::from_twice(std::llround(t));
    }
    const auto whole = parse_i64(s);
    if (!whole) return std::nullopt;
    return HalfInt(*whole);
}

std::string IndexPair::str() const { return "(" + ell.str() + ", " + m.str() + ")"; }

std::vector<IndexPair> enumerate_indices(int d, HalfInt ell_max) {
    if (d < 2) throw index_error("enumerate_indices: d must be >= 2");
    std::vector<IndexPair> out;
    for (std::int64_t tl = d - 1; tl <= ell_max.twice; tl += 2)
        for (std::int64_t tm = d - 2; tm <= tl - 1; tm += 2)
            out.push_back({HalfInt::from_twice(tl), HalfInt::from_twice(tm)});
    return out;
}

TransitionData transition_points(IndexPair p) {
    if (!p.in_I()) throw index_error("transition_points: pair " + p.str() + " not in I");
    const auto tl = p.ell.twice, tm = p.m.twice;
    if (tl == 0) throw index_error("transition_points: degenerate ell = 0");
    TransitionData t;
    t.b = static_cast<double>(tm) / static_cast<double>(tl);
    t.a = std::sqrt(static_cast<double>(tl * tl - tm * tm)) / static_cast<double>(tl);
    if (tm > 2) // xbar exists (and is < 1) only for m > 1
        t.xbar = std::sqrt(static_cast<double>(tl * tl - tm * tm + 3) /
                           static_cast<double>(tl * tl - 1));
    return t;
}

double q_factor(IndexPair p, double x) {
    if (!p.in_I()) throw index_error("q_factor: pair " + p.str() + " not in I");
    if (p.m.twice <= 2) throw domain_error("q_factor: xbar undefined for m <= 1");
    if (!(std::fabs(x) < 1.0)) throw domain_error("q_factor: requires |x| < 1");
    const auto tl = p.ell.twice, tm = p.m.twice;
    const double xbar2 = static_cast<double>(tl * tl - tm * tm + 3) /
                         static_cast<double>(tl * tl - 1);
    const double omx2 = (1.0 - x) * (1.0 + x);
    return 0.25 * static_cast<double>(tl * tl - 1) * (x * x - xbar2) / (omx2 * omx2);
}

double laplace_eigenvalue(int d, HalfInt ell) {
    if (d < 2) throw index_error("laplace_eigenvalue: d must be >= 2");
    const auto le = ell.twice - (d - 1);
    if (le < 0 || le % 2 != 0)
        throw index_error("laplace_eigenvalue: ell = " + ell.str() + " not in N_d");
    // (ell + (d-1)/2)(ell - (d-1)/2), exact in the doubled representation
    return 0.25 * static_cast<double>((ell.twice + (d - 1)) * (ell.twice - (d - 1)));
}

namespace {

// binomial(n, k) in exact integer arithmetic; throws range_error if the value
// (or an intermediate product) does not fit
std::int64_t binom_exact(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        const auto f = static_cast<unsigned __int128>(n - k + i);
        if (r > (~static_cast<unsigned __int128>(0)) / f)
            throw range_error("binomial: intermediate overflow");
        r = r * f / static_cast<unsigned __int128>(i); // divisible at every step
    }
    if (r > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
        throw range_error("binomial: result exceeds int64");
    return static_cast<std::int64_t>(r);
}

} // namespace

std::int64_t harmonic_dim(int d, HalfInt ell) {
    if (d < 1) throw index_error("harmonic_dim: d must be >= 1");
    const auto le = ell.twice - (d - 1);
    if (le < 0 || le % 2 != 0)
        throw index_error("harmonic_dim: ell = " + ell.str() + " not in N_d");
    const std::int64_t lp = le / 2; // ell' = ell - (d-1)/2
    return binom_exact(lp + d, d) - binom_exact(lp + d - 2, d);
}

double sphere_measure(int d) {
    if (d < 1) throw index_error("sphere_measure: d must be >= 1");
    // (d+1) pi^{(d+1)/2} / Gamma((d+3)/2)
    const double pi = 3.14159265358979323846;
    return std::exp(std::log(static_cast<double>(d + 1)) + 0.5 * (d + 1) * std::log(pi) -
                    log_gamma(0.5 * (d + 3)));
}

} // namespace usph
