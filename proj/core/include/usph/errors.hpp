#pragma once
// exception types used across the library

#include <stdexcept>
#include <string>

namespace usph {

// common base so callers can catch everything from this library at once
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// argument outside the mathematical domain of the function (|x| > 1, h out of
// bounds, nonpositive log_gamma argument, ...)
struct domain_error : error {
    using error::error;
};

// index pair or dimension not admissible (not in I / I_d, degenerate ell, ...)
struct index_error : error {
    using error::error;
};

// argument outside the supported numeric range of an implementation
struct range_error : error {
    using error::error;
};

// evaluation at a genuine pole of the function
struct pole_error : error {
    using error::error;
};

// asymptotic-regime mismatch (Hermite-side call with a Bessel-side pair, ...)
struct regime_error : error {
    using error::error;
};

// iteration failed to converge; carries the last residual seen
struct convergence_error : error {
    double residual;
    convergence_error(const std::string& what, double r) : error(what), residual(r) {}
};

// sample cannot be classified (removable singularity, value too small to sign)
struct skip_point : error {
    using error::error;
};

} // namespace usph
