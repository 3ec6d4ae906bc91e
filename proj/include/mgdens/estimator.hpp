#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mgdens/empirical.hpp"
#include "mgdens/gcm.hpp"

namespace mgdens {

// Density estimate on a grid: f_hat[i] = lambda_hat[i] * (1 - F_n[i])^2,
// where lambda_hat is the left derivative of the greatest convex minorant
// of Lambda_n over [a, b]. No bandwidth, no tuning parameter anywhere.
struct DensityEstimate {
    std::vector<double> grid;
    std::vector<double> f_hat;
    std::vector<double> lambda_hat;  // nondecreasing along the grid
    std::vector<double> F_n_vals;
    double a = 0.0;
    double b = 0.0;
    std::size_t n = 0;
};

// 5% and 95% empirical quantiles: the default working interval, kept away
// from the support boundary where minorant-type estimators degrade.
std::pair<double, double> default_interval(const ValueSample& sample);

// points equispaced values on [a, b], endpoints included.
std::vector<double> uniform_grid(double a, double b, std::size_t points = 257);

// Full pipeline: ecdf -> Lambda_n -> convex minorant -> left derivative,
// evaluated at each grid point. Requires n >= 3, a < b overlapping the data
// range, and a sorted grid inside [a, b].
DensityEstimate estimate_density(const ValueSample& sample, double a, double b,
                                 const std::vector<double>& grid);

// Single-point convenience; identical to estimate_density with a one-point
// grid.
double estimate_at(const ValueSample& sample, double v, double a, double b);

}  // namespace mgdens
