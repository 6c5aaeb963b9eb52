// Bessel J of real order: ascending series for small z, backward recurrence
// (Miller) normalized by the Neumann sum for large z

#include <cmath>
#include <vector>

#include "usph/specfun.hpp"

namespace usph {

namespace detail {

// series up to z = nu/2 for small orders; past nu ~ 65 that boundary is
// capped at 4*sqrt(nu+1): there the alternating sum cancels like
// e^{0.12*nu}, which outruns the 64-bit mantissa near nu ~ 300
double bessel_switch_z(double nu) {
    return std::max(12.0, std::min(0.5 * nu, 4.0 * std::sqrt(nu + 1.0)));
}

double bessel_j_series(double nu, double z) {
    if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    // sum in long double: under the switch cap q <= 4(nu+1), so terms grow
    // by at most ~e^4 before decaying and the cancellation stays ~1e3,
    // keeping the relative error at the 1e-16 level
    const long double q = 0.25L * static_cast<long double>(z) * z;
    long double term = 1.0L, sum = 1.0L;
    const int kmax = 20000;
    int k = 1;
    for (; k <= kmax; ++k) {
        const long double denom =
            static_cast<long double>(k) * (static_cast<long double>(nu) + k);
        term *= -q / denom;
        sum += term;
        if (denom > q && fabsl(term) <= 1e-24L * fabsl(sum)) break;
    }
    if (k > kmax)
        throw convergence_error("bessel_j: series did not converge",
                                static_cast<double>(fabsl(term)));
    if (sum == 0.0L) return 0.0;
    const double pref = nu == 0.0 ? 0.0 : nu * std::log(0.5 * z);
    const long double logmag = logl(fabsl(sum)) + static_cast<long double>(pref) -
                               static_cast<long double>(log_gamma(nu + 1.0));
    const double r = static_cast<double>(expl(logmag));
    return sum > 0.0L ? r : -r;
}

namespace {

constexpr double kRescale = 1e250;

// fills out[j] = J_{nu0+j}(z) for j = 0..need in one backward sweep;
// 0 <= nu0 < 1, z > 0. normalization: (z/2)^{nu0} = sum_k c_k J_{nu0+2k}(z),
// c_k = (nu0+2k) Gamma(nu0+k)/k! (c_0 = Gamma(nu0+1))
void miller_row(double nu0, int need, double z, std::vector<double>& out) {
    const int start = static_cast<int>(
        std::ceil(std::max(static_cast<double>(need), z - nu0) + 40.0 +
                  12.0 * std::cbrt(z + 1.0)));
    out.assign(static_cast<std::size_t>(need) + 1, 0.0);
    std::vector<double> vls(static_cast<std::size_t>(need) + 1, 0.0);

    double fj1 = 0.0;    // f_{j+1}
    double fj = 1e-280;  // seed at j = start; overall scale divides out
    double ls = 0.0;     // true f = f * exp(ls)
    double sum = 0.0, sum_ls = 0.0;
    const double log_rescale = std::log(kRescale);

    for (int j = start; j >= 0; --j) {
        if (j % 2 == 0) {
            const int k = j / 2;
            const double c = k == 0 ? std::exp(log_gamma(nu0 + 1.0))
                                    : std::exp(std::log(nu0 + j) + log_gamma(nu0 + k) -
                                               log_gamma(k + 1.0));
            if (sum != 0.0 && sum_ls != ls) sum *= std::exp(sum_ls - ls);
            sum_ls = ls;
            sum += c * fj;
        }
        if (j <= need) {
            out[j] = fj;
            vls[j] = ls;
        }
        if (j > 0) {
            const double fjm1 = (2.0 * (nu0 + j) / z) * fj - fj1;
            fj1 = fj;
            fj = fjm1;
            // rescale before the growth can overflow
            if (std::fabs(fj) > kRescale) {
                fj /= kRescale;
                fj1 /= kRescale;
                ls += log_rescale;
            }
        }
    }
    if (sum == 0.0)
        throw convergence_error("bessel_j: normalization sum vanished", 0.0);

    const double log_norm = std::log(std::fabs(sum)) + sum_ls;
    const double sgn_norm = sum > 0.0 ? 1.0 : -1.0;
    const double log_pref = nu0 == 0.0 ? 0.0 : nu0 * std::log(0.5 * z);
    for (int j = 0; j <= need; ++j) {
        if (out[j] == 0.0) continue;
        const double lm = std::log(std::fabs(out[j])) + vls[j] + log_pref - log_norm;
        const double s = (out[j] > 0.0 ? 1.0 : -1.0) * sgn_norm;
        out[j] = s * std::exp(lm); // graceful underflow: true value < 1e-300
    }
}

} // namespace

double bessel_j_miller(double nu, double z) {
    if (!(z > 0.0)) throw domain_error("bessel_j_miller: requires z > 0");
    const double nu0 = nu - std::floor(nu);
    const int need = static_cast<int>(std::floor(nu));
    std::vector<double> buf;
    miller_row(nu0, need, z, buf);
    return buf[static_cast<std::size_t>(need)];
}

} // namespace detail

double bessel_j(double nu, double z) {
    if (!(nu >= 0.0 && nu <= 2000.0)) throw range_error("bessel_j: nu out of [0, 2000]");
    if (!(z >= 0.0 && z <= 5000.0)) throw range_error("bessel_j: z out of [0, 5000]");
    if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (z <= detail::bessel_switch_z(nu)) return detail::bessel_j_series(nu, z);
    return detail::bessel_j_miller(nu, z);
}

std::vector<double> bessel_j_row(double nu0, int count, double z) {
    if (count < 1) throw domain_error("bessel_j_row: count must be >= 1");
    const double nu_top = nu0 + (count - 1);
    if (!(nu0 >= 0.0 && nu_top <= 2000.0))
        throw range_error("bessel_j_row: order range out of [0, 2000]");
    if (!(z >= 0.0 && z <= 5000.0)) throw range_error("bessel_j_row: z out of [0, 5000]");

    std::vector<double> out(static_cast<std::size_t>(count));
    if (z <= 12.0) {
        // every order in the row is on the series side here
        for (int k = 0; k < count; ++k) out[k] = detail::bessel_j_series(nu0 + k, z);
        return out;
    }
    const double base = nu0 - std::floor(nu0);
    const int shift = static_cast<int>(std::floor(nu0));
    std::vector<double> buf;
    detail::miller_row(base, shift + count - 1, z, buf);
    for (int k = 0; k < count; ++k) out[k] = buf[static_cast<std::size_t>(shift + k)];
    return out;
}

} // namespace usph
