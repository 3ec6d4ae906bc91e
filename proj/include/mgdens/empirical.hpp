#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgdens {

// Thrown when a computation is asked to run on too little data
// (empty sample, n below an operation's minimum, degenerate sample).
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sorted iid sample of observed valuations.
struct ValueSample {
    std::vector<double> values;  // sorted ascending, all finite

    std::size_t n() const { return values.size(); }

    // Sorts and validates; throws on empty input or non-finite entries.
    static ValueSample from_unsorted(std::vector<double> v);
};

// Right-continuous nondecreasing step function. Evaluation at v returns the
// value at the largest knot <= v, or left_value when v lies below all knots.
struct StepFunction {
    std::vector<double> knots;   // sorted, distinct
    std::vector<double> values;  // nondecreasing, one per knot
    double left_value = 0.0;

    double operator()(double v) const;

    // Left limit: value of the piece ending at v (largest knot strictly
    // below v), or left_value when there is none.
    double left_limit(double v) const;
};

// Empirical CDF F_n: jump of (multiplicity)/n at each distinct observation.
StepFunction ecdf(const ValueSample& sample);

// p -> 1 / (1 - p + 1/n). Maps F_n values to Lambda_n values; the 1/n term
// keeps the denominator positive at p = 1, where the value is exactly n.
double lambda_transform(double p, std::size_t n);

// Lambda_n(v) = 1 / (1 - F_n(v) + 1/n): nondecreasing step function with the
// same knots as F_n, bounded by n.
StepFunction lambda_n(const ValueSample& sample);

}  // namespace mgdens
