#include "mgdens/empirical.hpp"

#include <algorithm>
#include <cmath>

namespace mgdens {

ValueSample ValueSample::from_unsorted(std::vector<double> v) {
    if (v.empty()) throw InsufficientDataError("sample is empty");
    for (double x : v) {
        if (!std::isfinite(x)) throw std::invalid_argument("sample contains a non-finite value");
    }
    std::sort(v.begin(), v.end());
    return ValueSample{std::move(v)};
}

double StepFunction::operator()(double v) const {
    auto it = std::upper_bound(knots.begin(), knots.end(), v);
    if (it == knots.begin()) return left_value;
    return values[static_cast<std::size_t>(it - knots.begin()) - 1];
}

double StepFunction::left_limit(double v) const {
    auto it = std::lower_bound(knots.begin(), knots.end(), v);
    if (it == knots.begin()) return left_value;
    return values[static_cast<std::size_t>(it - knots.begin()) - 1];
}

StepFunction ecdf(const ValueSample& sample) {
    if (sample.values.empty()) throw InsufficientDataError("ecdf: empty sample");
    const auto& v = sample.values;
    const double n = static_cast<double>(v.size());

    StepFunction f;
    f.left_value = 0.0;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;  // ties merge into one jump
        f.knots.push_back(v[i]);
        f.values.push_back(static_cast<double>(j) / n);
        i = j;
    }
    return f;
}

double lambda_transform(double p, std::size_t n) {
    if (p >= 1.0) return static_cast<double>(n);
    return 1.0 / (1.0 - p + 1.0 / static_cast<double>(n));
}

StepFunction lambda_n(const ValueSample& sample) {
    StepFunction f = ecdf(sample);
    const std::size_t n = sample.n();
    f.left_value = lambda_transform(0.0, n);
    for (double& y : f.values) y = lambda_transform(y, n);
    return f;
}

}  // namespace mgdens
