#pragma once
// sweep harness: grid evaluation of profiles against their envelopes across
// index ranges, empirical constants, and the decay-rate fit

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "usph/envelopes.hpp"
#include "usph/errors.hpp"
#include "usph/halfint.hpp"

namespace usph {

struct SweepConfig {
    std::vector<int> d_list = {2};
    HalfInt ell_max = HalfInt(10);
    int x_grid_size = 101; // odd, >= 3; Chebyshev-spaced, clustered at +-1
    double epsilon = 0.5;
    double c = 0.05;
    double K = 2.0;
    double tol_norm = 1e-8; // in-sweep normalization suite
    double tol_rel = 1e-12; // in-sweep parity suite
    int parallelism = 1;
    std::string output_path;   // empty: report only
    std::string output_format = "json"; // "csv" or "json"

    void validate() const; // throws domain_error on nonsense
};

struct SweepSample {
    double x = 0.0;
    double Y = 0.0;
    double X = 0.0;
    double envelope = 0.0;
    double ratio = 0.0;
};

struct PairRecord {
    int d = 2;
    IndexPair pair;
    std::string regime; // "hermite" or "bessel"
    double sup_ratio = 0.0;
    double argmax_x = 0.0; // ties broken toward the smallest x
    std::vector<SweepSample> samples;
};

struct SuiteOutcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SweepReport {
    SweepConfig config;
    std::vector<PairRecord> per_pair;
    double C_H = 0.0;      // sup ratio over Hermite-regime pairs
    double C_B = 0.0;      // sup ratio over Bessel-regime pairs
    double C_exp = 0.0;    // sup |Y| / exp_small_y_bound, Bessel side
    double C_univ = 0.0;   // sup |Y| / universal_bound, all pairs
    double fitted_c = 0.0; // decay-rate fit on the first requested d
    std::vector<SuiteOutcome> suites;
    std::int64_t wall_time_ms = 0;

    bool pass() const;
    // stable key order; wall_time_ms can be masked for byte-comparisons
    std::string to_json(bool include_wall_time = true) const;
    void write_csv(std::ostream& os) const;
};

// run the sweep; deterministic for fixed config regardless of parallelism
SweepReport run_sweep(const SweepConfig& cfg);

// lhs = sum_m X^2 dim(H^m(S^{d-1}))/sigma_{d-1} over admissible m <= ell,
// rhs = dim(H^ell(S^d))/sigma_d; the sum telescopes to the rhs at every x
std::pair<double, double> projection_identity_check(int d, HalfInt ell, double x);

// largest c in (0,1] such that |Y| <= C |x|^{-1/2} (1-x^2)^{max(c eps ell, (d-2)/2)/2}
// holds on |x| >= K*a with a constant C stable across the lower and upper
// halves of the ell range (within 10%); c = 1 means every tested rate held
struct FitResult {
    bool region_empty = true;
    double c = 0.0;
    double big_C = 0.0; // constant attained at the fitted c
    std::int64_t samples = 0;
};
FitResult fit_decay_constant(int d, HalfInt ell_max, double epsilon, double K);

// parse "key=value" lines (# comments) into a config; unknown keys throw
SweepConfig load_sweep_config(const std::string& path);

} // namespace usph
