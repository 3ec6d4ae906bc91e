#include "mgdens/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "mgdens/estimator.hpp"
#include "mgdens/inference.hpp"
#include "mgdens/rng.hpp"

namespace mgdens {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate(const McConfig& cfg) {
    if (cfg.reps < 1) throw std::invalid_argument("montecarlo: reps must be >= 1");
    if (cfg.n_grid.empty()) throw std::invalid_argument("montecarlo: n_grid must be nonempty");
    for (std::size_t i = 0; i + 1 < cfg.n_grid.size(); ++i) {
        if (!(cfg.n_grid[i] < cfg.n_grid[i + 1]))
            throw std::invalid_argument("montecarlo: n_grid must be strictly increasing");
    }
    if (!(cfg.a < cfg.b)) throw std::invalid_argument("montecarlo: requires a < b");
    if (!(cfg.v > cfg.a && cfg.v < cfg.b))
        throw std::invalid_argument("montecarlo: v must lie in (a, b)");
}

// Runs fn(i) for i in [0, count) across the given number of workers. Work
// items land in caller-owned slots, so scheduling cannot affect the result.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

struct RepOutcome {
    double err = kNaN;      // f_hat(v) - f(v)
    double sup = kNaN;      // sup over the sup grid of |f_hat - f|
    double covered = kNaN;  // 1/0 for coverage runs
    bool failed = false;
};

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    std::size_t m = 0;
    for (double x : xs) {
        if (!std::isnan(x)) {
            s += x;
            ++m;
        }
    }
    return m == 0 ? kNaN : s / static_cast<double>(m);
}

double median_of(std::vector<double> xs) {
    std::erase_if(xs, [](double x) { return std::isnan(x); });
    if (xs.empty()) return kNaN;
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size();
    return m % 2 == 1 ? xs[m / 2] : 0.5 * (xs[m / 2 - 1] + xs[m / 2]);
}

void fit_slope(McReport& rep) {
    std::vector<double> xs, ys;
    for (const auto& pn : rep.per_n) {
        if (!std::isnan(pn.mean_abs_err) && pn.mean_abs_err > 0.0) {
            xs.push_back(std::log(static_cast<double>(pn.n)));
            ys.push_back(std::log(pn.mean_abs_err));
        }
    }
    const std::size_t m = xs.size();
    if (m < 2) {
        rep.slope = kNaN;
        rep.slope_stderr = kNaN;
        return;
    }
    const double xbar = mean_of(xs), ybar = mean_of(ys);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
    }
    rep.slope = sxy / sxx;
    if (m == 2) {
        rep.slope_stderr = 0.0;
        return;
    }
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = ys[i] - ybar - rep.slope * (xs[i] - xbar);
        rss += r * r;
    }
    rep.slope_stderr = std::sqrt(rss / (static_cast<double>(m) - 2.0) / sxx);
}

template <class RepFn>
McReport run_experiment(const McConfig& cfg, unsigned threads, bool coverage_mode, RepFn&& rep_fn) {
    validate(cfg);
    const unsigned workers = resolve_threads(threads);

    McReport report;
    for (const std::size_t n : cfg.n_grid) {
        std::vector<RepOutcome> slots(cfg.reps);
        parallel_for(cfg.reps, workers, [&](std::size_t i) {
            try {
                slots[i] = rep_fn(n, derive_seed(cfg.seed, n, i));
            } catch (const std::exception&) {
                slots[i].failed = true;
            }
        });

        McPerN pn;
        pn.n = n;
        pn.errors.resize(cfg.reps, kNaN);
        std::vector<double> abs_errs(cfg.reps, kNaN), sups(cfg.reps, kNaN), covs(cfg.reps, kNaN);
        for (std::size_t i = 0; i < cfg.reps; ++i) {
            if (slots[i].failed) {
                ++pn.failed;
                continue;
            }
            pn.errors[i] = slots[i].err;
            abs_errs[i] = std::abs(slots[i].err);
            sups[i] = slots[i].sup;
            covs[i] = slots[i].covered;
        }
        if (static_cast<double>(pn.failed) > 0.01 * static_cast<double>(cfg.reps)) {
            throw std::runtime_error("montecarlo: more than 1% of replications failed at n = " +
                                     std::to_string(n));
        }
        pn.mean_abs_err = mean_of(abs_errs);
        pn.median_abs_err = median_of(abs_errs);
        pn.sup_err_mean = coverage_mode ? kNaN : mean_of(sups);
        pn.coverage = coverage_mode ? mean_of(covs) : kNaN;
        report.per_n.push_back(std::move(pn));
    }
    fit_slope(report);
    return report;
}

}  // namespace

unsigned resolve_threads(unsigned requested) {
    unsigned t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MG_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) t = std::min<unsigned>(t, static_cast<unsigned>(cap));
    }
    return std::max(1u, t);
}

McReport run_rate_experiment(const McConfig& cfg, unsigned threads) {
    if (!(cfg.sup_lo >= cfg.a && cfg.sup_hi <= cfg.b && cfg.sup_lo < cfg.sup_hi))
        throw std::invalid_argument("montecarlo: sup grid must lie inside [a, b]");
    const double truth = pdf(cfg.spec, cfg.v);

    // Evaluation grid: the sup grid plus the target point.
    std::vector<double> grid = uniform_grid(cfg.sup_lo, cfg.sup_hi, cfg.sup_points);
    auto pos = std::lower_bound(grid.begin(), grid.end(), cfg.v);
    if (pos == grid.end() || *pos != cfg.v) pos = grid.insert(pos, cfg.v);
    const auto v_idx = static_cast<std::size_t>(pos - grid.begin());
    std::vector<double> truth_grid(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) truth_grid[i] = pdf(cfg.spec, grid[i]);

    return run_experiment(cfg, threads, /*coverage_mode=*/false,
                          [&](std::size_t n, std::uint64_t seed) {
                              const ValueSample s = sample(cfg.spec, n, seed);
                              const DensityEstimate est = estimate_density(s, cfg.a, cfg.b, grid);
                              RepOutcome out;
                              out.err = est.f_hat[v_idx] - truth;
                              double sup = 0.0;
                              for (std::size_t i = 0; i < grid.size(); ++i)
                                  sup = std::max(sup, std::abs(est.f_hat[i] - truth_grid[i]));
                              out.sup = sup;
                              return out;
                          });
}

McReport run_coverage_experiment(const McConfig& cfg, unsigned threads) {
    if (!(cfg.level >= 0.5 && cfg.level < 1.0))
        throw std::invalid_argument("montecarlo: level must be in [0.5, 1)");
    const double truth = pdf(cfg.spec, cfg.v);
    const ChernoffApprox approx;
    return run_experiment(cfg, threads, /*coverage_mode=*/true,
                          [&](std::size_t n, std::uint64_t seed) {
                              const ValueSample s = sample(cfg.spec, n, seed);
                              const InferenceResult ci =
                                  confidence_interval(s, cfg.v, cfg.level, approx, cfg.a, cfg.b);
                              RepOutcome out;
                              out.err = ci.f_hat - truth;
                              out.covered = (ci.ci_lo <= truth && truth <= ci.ci_hi) ? 1.0 : 0.0;
                              return out;
                          });
}

double kde_baseline(const ValueSample& sample, double v) {
    const std::size_t n = sample.n();
    if (n < 2) throw InsufficientDataError("kde_baseline: need at least 2 observations");
    if (sample.values.front() == sample.values.back())
        throw std::invalid_argument("kde_baseline: sample has zero variance");

    const double nn = static_cast<double>(n);
    const double mean = [&] {
        double s = 0.0;
        for (double x : sample.values) s += x;
        return s / nn;
    }();
    double ss = 0.0;
    for (double x : sample.values) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (nn - 1.0));
    if (!(sd > 0.0)) throw std::invalid_argument("kde_baseline: sample has zero variance");

    const double h = 1.06 * sd * std::pow(nn, -0.2);
    const double inv_sqrt_2pi = 0.3989422804014327;
    double acc = 0.0;
    for (double x : sample.values) {
        const double t = (v - x) / h;
        acc += inv_sqrt_2pi * std::exp(-0.5 * t * t);
    }
    return acc / (nn * h);
}

}  // namespace mgdens
