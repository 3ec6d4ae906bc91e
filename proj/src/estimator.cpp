#include "mgdens/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mgdens {

std::pair<double, double> default_interval(const ValueSample& sample) {
    const std::size_t n = sample.n();
    if (n < 2) throw InsufficientDataError("default_interval: need at least 2 observations");
    auto order_stat = [&](double p) {
        // ceil(p * n) with a guard against p*n landing a hair above an integer
        const double x = p * static_cast<double>(n);
        const double fl = std::floor(x);
        auto k = static_cast<std::size_t>(x - fl <= 1e-9 ? fl : fl + 1.0);
        k = std::clamp<std::size_t>(k, 1, n);
        return sample.values[k - 1];
    };
    return {order_stat(0.05), order_stat(0.95)};
}

std::vector<double> uniform_grid(double a, double b, std::size_t points) {
    if (!(a < b)) throw std::invalid_argument("uniform_grid: requires a < b");
    if (points < 2) throw std::invalid_argument("uniform_grid: requires at least 2 points");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    g.front() = a;
    g.back() = b;
    return g;
}

DensityEstimate estimate_density(const ValueSample& sample, double a, double b,
                                 const std::vector<double>& grid) {
    if (sample.n() < 3) throw InsufficientDataError("estimate_density: need at least 3 observations");
    if (sample.values.front() == sample.values.back())
        throw InsufficientDataError("estimate_density: all observations identical");
    if (!(a < b)) throw std::invalid_argument("estimate_density: invalid interval (requires a < b)");
    if (grid.empty()) throw std::invalid_argument("estimate_density: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < a || grid[i] > b)
            throw std::domain_error("estimate_density: grid point outside [a, b]");
        if (i > 0 && grid[i] < grid[i - 1])
            throw std::invalid_argument("estimate_density: grid must be sorted");
    }

    const StepFunction fn = ecdf(sample);
    const StepFunction lam = lambda_n(sample);
    const ConvexMinorant cm = gcm_of_step(lam, a, b);

    DensityEstimate est;
    est.a = a;
    est.b = b;
    est.n = sample.n();
    est.grid = grid;
    est.f_hat.resize(grid.size());
    est.lambda_hat.resize(grid.size());
    est.F_n_vals.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double slope = left_derivative(cm, grid[i]);
        const double F = fn(grid[i]);
        const double surv = 1.0 - F;
        est.lambda_hat[i] = slope;
        est.F_n_vals[i] = F;
        est.f_hat[i] = slope * surv * surv;
    }
    return est;
}

double estimate_at(const ValueSample& sample, double v, double a, double b) {
    return estimate_density(sample, a, b, {v}).f_hat.front();
}

}  // namespace mgdens
