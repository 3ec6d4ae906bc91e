#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mgdens/distributions.hpp"
#include "mgdens/empirical.hpp"

namespace mgdens {

struct McConfig {
    DistributionSpec spec;
    double v = 0.5;
    std::vector<std::size_t> n_grid;  // strictly increasing
    std::size_t reps = 200;
    std::uint64_t seed = 1;
    double level = 0.95;              // coverage experiments only
    double a = 0.05;
    double b = 0.95;
    double sup_lo = 0.1;              // grid for the sup-error statistic
    double sup_hi = 0.9;
    std::size_t sup_points = 33;
};

struct McPerN {
    std::size_t n = 0;
    double mean_abs_err = 0.0;
    double median_abs_err = 0.0;
    double sup_err_mean = 0.0;  // NaN for coverage runs
    double coverage = 0.0;      // NaN for rate runs
    std::size_t failed = 0;
    // Signed errors f_hat(v) - f(v), one slot per replication in rep order;
    // NaN marks a failed replication. Kept for exports and for checking the
    // standardized error distribution.
    std::vector<double> errors;
};

struct McReport {
    std::vector<McPerN> per_n;
    double slope = 0.0;         // least-squares slope of log(mean_abs_err) on log(n); NaN if undefined
    double slope_stderr = 0.0;  // NaN if undefined
};

// Errors at v plus sup-error over the sup grid, per n. Replications run in
// parallel into preassigned slots and are reduced in rep order, so the
// report is bit-identical for any thread count. Throws when more than 1% of
// the replications of some n fail.
McReport run_rate_experiment(const McConfig& cfg, unsigned threads = 0);

// Fraction of replications whose confidence interval covers the true f(v).
McReport run_coverage_experiment(const McConfig& cfg, unsigned threads = 0);

// Gaussian-kernel estimate with the rule-of-thumb bandwidth
// 1.06 * sd * n^(-1/5); the smoothing baseline the minorant estimator is
// compared against.
double kde_baseline(const ValueSample& sample, double v);

// 0 = hardware concurrency; the MG_THREADS environment variable caps the
// result either way.
unsigned resolve_threads(unsigned requested);

}  // namespace mgdens
