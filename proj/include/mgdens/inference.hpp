#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mgdens/empirical.hpp"

namespace mgdens {

// Quantile source for the pivot distribution of the cube-root limit (the
// argmax of two-sided Brownian motion minus a parabola). By default uses
// the N(0, 0.52^2) approximation; a user-supplied table of (p, q) pairs,
// strictly increasing in both coordinates, overrides it with monotone
// linear interpolation.
struct ChernoffApprox {
    double sd = 0.52;
    std::vector<std::pair<double, double>> table;
};

struct InferenceResult {
    double v = 0.0;
    double f_hat = 0.0;
    double c_hat = 0.0;        // plug-in scale constant actually used
    double f_prime_hat = 0.0;  // raw derivative estimate, before any clipping
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double level = 0.0;
    std::size_t n = 0;
    bool c_fallback = false;   // true when f' was clipped to keep the scale real
};

// Inverse standard normal CDF (rational approximation plus one Halley
// refinement; accurate to ~1e-15).
double standard_normal_quantile(double p);

// C = (8 f^3 / (1 - F) + 4 f f')^(1/3). Throws when the cube-root argument
// is negative (convexity of 1/(1-F) would be violated at that point).
double chernoff_scale(double f, double f_prime, double F);

double chernoff_quantile(const ChernoffApprox& approx, double p);

// Symmetric difference quotient of the shape-constrained estimate at
// v +/- h, h = sd(sample) * n^(-1/7), clipped so the window stays inside
// [a, b]. A stand-in for any conventional derivative estimator.
double estimate_f_prime(const ValueSample& sample, double v, double a, double b);

// f_hat(v) +/- n^(-1/3) * C_hat(v) * q((1 + level)/2). When the plug-in
// cube-root argument goes negative from derivative noise, f' is clipped to
// zero (conservative, wider interval) and the result is flagged.
InferenceResult confidence_interval(const ValueSample& sample, double v, double level,
                                    const ChernoffApprox& approx, double a, double b);

}  // namespace mgdens
