#pragma once
// sign + log-magnitude representation for quantities whose dynamic range
// exceeds double (normalization constants, high-degree recurrences)

#include <cmath>
#include <limits>

#include "usph/errors.hpp"

namespace usph {

struct ScaledReal {
    int sign = 0;       // -1, 0, +1
    double log_mag = -std::numeric_limits<double>::infinity();

    static ScaledReal zero() { return {}; }

    static ScaledReal from_log(int sign, double log_mag) {
        ScaledReal r;
        r.sign = (sign > 0) - (sign < 0);
        r.log_mag = r.sign == 0 ? -std::numeric_limits<double>::infinity() : log_mag;
        return r;
    }

    static ScaledReal from_double(double v) {
        if (v == 0.0) return zero();
        return from_log(v > 0 ? 1 : -1, std::log(std::fabs(v)));
    }

    bool is_zero() const { return sign == 0; }

    // lenient conversion: gradual underflow to 0, throws only on overflow
    double to_double() const {
        if (sign == 0) return 0.0;
        if (log_mag > 709.0) throw domain_error("ScaledReal overflows double");
        return sign * std::exp(log_mag);
    }

    // strict conversion: exact only while |log_mag| < 700, signals otherwise
    double to_double_strict() const {
        if (sign == 0) return 0.0;
        if (!(std::fabs(log_mag) < 700.0))
            throw domain_error("ScaledReal conversion out of the exact window");
        return sign * std::exp(log_mag);
    }

    friend ScaledReal operator*(ScaledReal a, ScaledReal b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return from_log(a.sign * b.sign, a.log_mag + b.log_mag);
    }

    friend ScaledReal operator/(ScaledReal a, ScaledReal b) {
        if (b.sign == 0) throw domain_error("ScaledReal division by zero");
        if (a.sign == 0) return zero();
        return from_log(a.sign * b.sign, a.log_mag - b.log_mag);
    }

    friend ScaledReal operator+(ScaledReal a, ScaledReal b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        if (a.log_mag < b.log_mag) std::swap(a, b);
        const double t = a.sign * b.sign * std::exp(b.log_mag - a.log_mag);
        const double f = 1.0 + t;
        if (f == 0.0) return zero(); // exact cancellation
        return from_log(f > 0 ? a.sign : -a.sign, a.log_mag + std::log(std::fabs(f)));
    }

    friend ScaledReal operator-(ScaledReal a) { return from_log(-a.sign, a.log_mag); }
    friend ScaledReal operator-(ScaledReal a, ScaledReal b) { return a + (-b); }

    ScaledReal abs() const { return from_log(sign == 0 ? 0 : 1, log_mag); }
};

} // namespace usph
