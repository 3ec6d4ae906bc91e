#include "mgdens/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mgdens/estimator.hpp"

namespace mgdens {

namespace {

double sample_sd(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (n - 1.0));
}

// Difference-quotient window [lo, hi] around v: half-width sd * n^(-1/7),
// clipped so the window stays inside [a, b]. Endpoints are clamped after
// the symmetric clip because v - (v - a) can round one ulp past a.
struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

Window derivative_window(const ValueSample& sample, double v, double a, double b) {
    if (sample.n() < 10) throw InsufficientDataError("estimate_f_prime: need n >= 10");
    if (!(v > a && v < b)) throw std::domain_error("estimate_f_prime: v must lie in (a, b)");
    const double n = static_cast<double>(sample.n());
    double h = sample_sd(sample.values) * std::pow(n, -1.0 / 7.0);
    h = std::min({h, v - a, b - v});
    Window w{std::max(a, v - h), std::min(b, v + h)};
    if (!(w.hi - w.lo > 2e-12))
        throw std::domain_error("estimate_f_prime: derivative window collapsed");
    return w;
}

}  // namespace

double standard_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("standard_normal_quantile: p must be in (0, 1)");

    // Acklam's rational approximation.
    static constexpr double A[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double B[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double C[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double D[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
            ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q /
            (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
            ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
    }

    // One Halley step against the exact CDF brings this to full precision.
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * 3.14159265358979323846) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double chernoff_scale(double f, double f_prime, double F) {
    if (!(f > 0.0)) throw std::invalid_argument("chernoff_scale: requires f > 0");
    if (!(F >= 0.0 && F < 1.0)) throw std::invalid_argument("chernoff_scale: requires F in [0, 1)");
    const double bracket = 8.0 * f * f * f / (1.0 - F) + 4.0 * f * f_prime;
    if (bracket < 0.0)
        throw std::domain_error("chernoff_scale: regularity violated (negative cube-root argument)");
    return std::cbrt(bracket);
}

double chernoff_quantile(const ChernoffApprox& approx, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("chernoff_quantile: p must be in (0, 1)");
    if (approx.table.empty()) {
        if (!(approx.sd > 0.0)) throw std::invalid_argument("chernoff_quantile: sd must be > 0");
        return approx.sd * standard_normal_quantile(p);
    }

    const auto& t = approx.table;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        if (!(t[i].first < t[i + 1].first && t[i].second < t[i + 1].second))
            throw std::invalid_argument("chernoff_quantile: table must be strictly increasing");
    }
    if (p < t.front().first || p > t.back().first)
        throw std::domain_error("chernoff_quantile: p outside the table range");
    auto it = std::lower_bound(t.begin(), t.end(), p,
                               [](const auto& row, double x) { return row.first < x; });
    if (it->first == p) return it->second;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (p - lo.first) / (hi.first - lo.first);
    return lo.second + w * (hi.second - lo.second);
}

double estimate_f_prime(const ValueSample& sample, double v, double a, double b) {
    const Window w = derivative_window(sample, v, a, b);
    const DensityEstimate est = estimate_density(sample, a, b, {w.lo, w.hi});
    return (est.f_hat[1] - est.f_hat[0]) / (w.hi - w.lo);
}

InferenceResult confidence_interval(const ValueSample& sample, double v, double level,
                                    const ChernoffApprox& approx, double a, double b) {
    if (!(level >= 0.5 && level < 1.0))
        throw std::invalid_argument("confidence_interval: requires 0.5 <= level < 1");

    // One pass over the pipeline: f_hat at v and the derivative quotient
    // share the same minorant.
    const Window w = derivative_window(sample, v, a, b);
    const DensityEstimate est = estimate_density(sample, a, b, {w.lo, v, w.hi});
    const double f_hat = est.f_hat[1];
    const double F = est.F_n_vals[1];
    const double f_prime = (est.f_hat[2] - est.f_hat[0]) / (w.hi - w.lo);

    double fp_used = f_prime;
    bool fallback = false;
    if (8.0 * f_hat * f_hat * f_hat / (1.0 - F) + 4.0 * f_hat * f_prime < 0.0) {
        fp_used = 0.0;  // derivative noise only; drop the term rather than fail
        fallback = true;
    }
    const double c_hat = chernoff_scale(f_hat, fp_used, F);
    const double q = chernoff_quantile(approx, 0.5 * (1.0 + level));
    const double half = c_hat * q * std::pow(static_cast<double>(sample.n()), -1.0 / 3.0);

    InferenceResult res;
    res.v = v;
    res.f_hat = f_hat;
    res.c_hat = c_hat;
    res.f_prime_hat = f_prime;
    res.ci_lo = f_hat - half;
    res.ci_hi = f_hat + half;
    res.level = level;
    res.n = sample.n();
    res.c_fallback = fallback;
    return res;
}

}  // namespace mgdens
