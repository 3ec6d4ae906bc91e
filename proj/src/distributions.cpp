#include "mgdens/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mgdens/rng.hpp"

namespace mgdens {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

[[noreturn]] void outside_support(double v, double lo, double hi) {
    throw std::domain_error("value " + std::to_string(v) + " outside support [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

// Perturbed uniform, piecewise in v. Branch boundaries sit at
// 1/2 - d, 1/2, 1/2 + 2d, 1/2 + 3d.
double pu_pdf(double d, double v) {
    if (v < 0.5 - d || v >= 0.5 + 3.0 * d) return 1.0;
    if (v < 0.5) return v + 0.5 + d;
    if (v < 0.5 + 2.0 * d) return -v + 1.5 + d;
    return v + 0.5 - 3.0 * d;
}

double pu_cdf(double d, double v) {
    if (v < 0.5 - d) return v;
    if (v < 0.5) return 0.5 * v * v + (0.5 + d) * v + 0.5 * (d - 0.5) * (d - 0.5);
    if (v < 0.5 + 2.0 * d) return -0.5 * v * v + (1.5 + d) * v + 0.5 * (d * d - d - 0.25);
    if (v < 0.5 + 3.0 * d) return 0.5 * v * v + (0.5 - 3.0 * d) * v + 0.5 * (0.5 + 3.0 * d) * (0.5 + 3.0 * d);
    return v;
}

double pu_pdf_deriv(double d, double v) {
    // left derivative at the branch boundaries
    if (v <= 0.5 - d || v > 0.5 + 3.0 * d) return 0.0;
    if (v <= 0.5) return 1.0;
    if (v <= 0.5 + 2.0 * d) return -1.0;
    return 1.0;
}

// Derivative of the half-open branch containing v, i.e. the right
// derivative at the boundaries. Matches the closed-form piecewise psi.
double pu_branch_deriv(double d, double v) {
    if (v < 0.5 - d || v >= 0.5 + 3.0 * d) return 0.0;
    if (v < 0.5) return 1.0;
    if (v < 0.5 + 2.0 * d) return -1.0;
    return 1.0;
}

}  // namespace

DistributionSpec::DistributionSpec(Family family) : family_(family) {
    std::visit(overloaded{
                   [](const Uniform& u) {
                       require(std::isfinite(u.lo) && std::isfinite(u.hi) && u.lo < u.hi,
                               "uniform: requires lo < hi");
                   },
                   [](const TruncExp& e) {
                       require(std::isfinite(e.rate) && e.rate > 0.0, "trunc_exp: requires rate > 0");
                       require(std::isfinite(e.lo) && std::isfinite(e.hi) && e.lo < e.hi,
                               "trunc_exp: requires lo < hi");
                   },
                   [](const PerturbedUniform& p) {
                       require(p.delta > 0.0 && p.delta < 1.0 / 3.0,
                               "perturbed_uniform: requires 0 < delta < 1/3");
                   },
                   [](const GapMixture& g) {
                       require(g.w > 0.0 && g.w < 1.0, "gap_mixture: requires 0 < w < 1");
                       require(std::isfinite(g.lo1) && g.lo1 < g.hi1 && g.hi1 < g.lo2 && g.lo2 < g.hi2,
                               "gap_mixture: requires lo1 < hi1 < lo2 < hi2");
                   }},
               family_);
}

double DistributionSpec::support_lo() const {
    return std::visit(overloaded{[](const Uniform& u) { return u.lo; },
                                 [](const TruncExp& e) { return e.lo; },
                                 [](const PerturbedUniform&) { return 0.0; },
                                 [](const GapMixture& g) { return g.lo1; }},
                      family_);
}

double DistributionSpec::support_hi() const {
    return std::visit(overloaded{[](const Uniform& u) { return u.hi; },
                                 [](const TruncExp& e) { return e.hi; },
                                 [](const PerturbedUniform&) { return 1.0; },
                                 [](const GapMixture& g) { return g.hi2; }},
                      family_);
}

std::vector<double> DistributionSpec::kinks() const {
    return std::visit(
        overloaded{[](const Uniform&) { return std::vector<double>{}; },
                   [](const TruncExp&) { return std::vector<double>{}; },
                   [](const PerturbedUniform& p) {
                       std::vector<double> ks{0.5 - p.delta, 0.5, 0.5 + 2.0 * p.delta, 0.5 + 3.0 * p.delta};
                       std::erase_if(ks, [](double k) { return k <= 0.0 || k >= 1.0; });
                       return ks;
                   },
                   [](const GapMixture& g) {
                       return std::vector<double>{g.hi1, g.lo2};
                   }},
        family_);
}

std::string DistributionSpec::family_name() const {
    return std::visit(overloaded{[](const Uniform&) { return std::string("uniform"); },
                                 [](const TruncExp&) { return std::string("trunc_exp"); },
                                 [](const PerturbedUniform&) { return std::string("perturbed_uniform"); },
                                 [](const GapMixture&) { return std::string("gap_mixture"); }},
                      family_);
}

double pdf(const DistributionSpec& spec, double v) {
    const double lo = spec.support_lo(), hi = spec.support_hi();
    if (v < lo || v > hi) outside_support(v, lo, hi);
    return std::visit(
        overloaded{[&](const Uniform& u) { return 1.0 / (u.hi - u.lo); },
                   [&](const TruncExp& e) {
                       const double z = 1.0 - std::exp(-e.rate * (e.hi - e.lo));
                       return e.rate * std::exp(-e.rate * (v - e.lo)) / z;
                   },
                   [&](const PerturbedUniform& p) { return pu_pdf(p.delta, v); },
                   [&](const GapMixture& g) {
                       if (v <= g.hi1) return g.w / (g.hi1 - g.lo1);
                       if (v < g.lo2) return 0.0;
                       return (1.0 - g.w) / (g.hi2 - g.lo2);
                   }},
        spec.family());
}

double cdf(const DistributionSpec& spec, double v) {
    const double lo = spec.support_lo(), hi = spec.support_hi();
    if (v < lo || v > hi) outside_support(v, lo, hi);
    return std::visit(
        overloaded{[&](const Uniform& u) { return (v - u.lo) / (u.hi - u.lo); },
                   [&](const TruncExp& e) {
                       const double z = 1.0 - std::exp(-e.rate * (e.hi - e.lo));
                       return (1.0 - std::exp(-e.rate * (v - e.lo))) / z;
                   },
                   [&](const PerturbedUniform& p) { return pu_cdf(p.delta, v); },
                   [&](const GapMixture& g) {
                       if (v <= g.hi1) return g.w * (v - g.lo1) / (g.hi1 - g.lo1);
                       if (v < g.lo2) return g.w;
                       return g.w + (1.0 - g.w) * (v - g.lo2) / (g.hi2 - g.lo2);
                   }},
        spec.family());
}

double pdf_deriv(const DistributionSpec& spec, double v) {
    const double lo = spec.support_lo(), hi = spec.support_hi();
    if (v < lo || v > hi) outside_support(v, lo, hi);
    return std::visit(overloaded{[&](const Uniform&) { return 0.0; },
                                 [&](const TruncExp& e) { return -e.rate * pdf(spec, v); },
                                 [&](const PerturbedUniform& p) { return pu_pdf_deriv(p.delta, v); },
                                 [&](const GapMixture&) { return 0.0; }},
                      spec.family());
}

double virtual_value(const DistributionSpec& spec, double v) {
    const double f = pdf(spec, v);
    if (f <= 0.0) {
        throw std::domain_error("virtual value undefined at v = " + std::to_string(v) +
                                ": density is zero");
    }
    return v - (1.0 - cdf(spec, v)) / f;
}

double regularity_psi(const DistributionSpec& spec, double v) {
    const double f = pdf(spec, v);
    // The derivative follows the half-open branch decomposition (right
    // derivative at a kink), so the piecewise closed forms hold at the kink
    // points themselves. pdf_deriv's left-derivative convention differs only
    // there.
    const double fp = std::visit(
        [&](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, PerturbedUniform>) return pu_branch_deriv(fam.delta, v);
            (void)fam;
            return pdf_deriv(spec, v);
        },
        spec.family());
    return 2.0 * f * f + (1.0 - cdf(spec, v)) * fp;
}

RegularityReport check_regularity(const DistributionSpec& spec, std::size_t grid_size, double tol) {
    if (grid_size < 3) throw std::invalid_argument("check_regularity: grid_size must be >= 3");

    const double lo = spec.support_lo(), hi = spec.support_hi();
    const double h = (hi - lo) / static_cast<double>(grid_size + 1);

    RegularityReport rep;
    rep.grid_size = grid_size;
    rep.min_psi = std::numeric_limits<double>::infinity();

    std::vector<double> vs(grid_size), lam(grid_size), fv(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double v = lo + h * static_cast<double>(i + 1);
        vs[i] = v;
        const double psi = regularity_psi(spec, v);
        if (psi < rep.min_psi) {
            rep.min_psi = psi;
            rep.argmin_v = v;
        }
        const double f = pdf(spec, v);
        const double s = 1.0 - cdf(spec, v);
        fv[i] = 1.0 - s;
        lam[i] = s > 0.0 ? f / (s * s) : std::numeric_limits<double>::quiet_NaN();
    }

    // The slope f/(1-F)^2 must be nondecreasing for 1/(1-F) to be convex. A
    // downward density jump drops it while keeping psi >= 0 on the pieces,
    // so decreases are folded into min_psi as discrete curvature
    // (1-F)^3 * dlambda/dv at the offending pair.
    for (std::size_t i = 0; i + 1 < grid_size; ++i) {
        if (std::isnan(lam[i]) || std::isnan(lam[i + 1])) continue;
        const double drop = lam[i] - lam[i + 1];
        if (drop <= 1e-12 * std::max(1.0, std::abs(lam[i]))) continue;
        const double mid = 0.5 * (vs[i] + vs[i + 1]);
        const double s = 1.0 - cdf(spec, mid);
        const double eff = s * s * s * (lam[i + 1] - lam[i]) / h;
        if (eff < rep.min_psi) {
            rep.min_psi = eff;
            rep.argmin_v = mid;
        }
    }

    rep.is_regular = rep.min_psi >= -tol;
    return rep;
}

ValueSample sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<double> out(n);

    std::visit(overloaded{
                   [&](const Uniform& u) {
                       for (double& x : out) x = u.lo + (u.hi - u.lo) * uniform01(rng);
                   },
                   [&](const TruncExp& e) {
                       const double z = 1.0 - std::exp(-e.rate * (e.hi - e.lo));
                       for (double& x : out) x = e.lo - std::log1p(-z * uniform01(rng)) / e.rate;
                   },
                   [&](const PerturbedUniform& p) {
                       const double env = 1.0 + p.delta;
                       for (double& x : out) {
                           for (;;) {
                               const double cand = uniform01(rng);
                               const double y = env * uniform01(rng);
                               if (y <= pu_pdf(p.delta, cand)) {
                                   x = cand;
                                   break;
                               }
                           }
                       }
                   },
                   [&](const GapMixture& g) {
                       for (double& x : out) {
                           const double u = uniform01(rng);
                           if (u < g.w) {
                               x = g.lo1 + (u / g.w) * (g.hi1 - g.lo1);
                           } else {
                               x = g.lo2 + ((u - g.w) / (1.0 - g.w)) * (g.hi2 - g.lo2);
                           }
                       }
                   }},
               spec.family());

    return ValueSample::from_unsorted(std::move(out));
}

}  // namespace mgdens
