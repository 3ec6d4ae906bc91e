#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mgdens/empirical.hpp"

namespace mgdens {

struct Uniform {
    double lo = 0.0;
    double hi = 1.0;
};

// Exponential(rate) shifted to lo and truncated to [lo, hi].
struct TruncExp {
    double rate = 1.0;
    double lo = 0.0;
    double hi = 1.0;
};

// Unit uniform plus a piecewise-linear bump/dip perturbation of height delta
// centered at 1/2, window [1/2 - delta, 1/2 + 3 delta]. Requires
// 0 < delta < 1/3, the range on which the convexity criterion stays
// positive. The window fits inside [0, 1] only for delta <= 1/6; above that
// the dip is truncated at the support edge and the density carries a small
// mass surplus (the sampler draws from the normalized version).
struct PerturbedUniform {
    double delta = 0.1;
};

// Two uniform blocks separated by a zero-density gap: weight w on
// [lo1, hi1], weight 1 - w on [lo2, hi2], hi1 < lo2. Deliberately fails the
// convexity of 1/(1 - F); used as the irregular ground truth.
struct GapMixture {
    double w = 0.5;
    double lo1 = 0.0;
    double hi1 = 0.1;
    double lo2 = 0.9;
    double hi2 = 1.0;
};

class DistributionSpec {
  public:
    using Family = std::variant<Uniform, TruncExp, PerturbedUniform, GapMixture>;

    explicit DistributionSpec(Family family);

    const Family& family() const { return family_; }
    double support_lo() const;
    double support_hi() const;

    // Interior points where the density is not smooth, sorted.
    std::vector<double> kinks() const;

    // "uniform", "trunc_exp", "perturbed_uniform" or "gap_mixture".
    std::string family_name() const;

  private:
    Family family_;
};

double pdf(const DistributionSpec& spec, double v);
double cdf(const DistributionSpec& spec, double v);

// Analytic density derivative; at a kink, the left derivative.
double pdf_deriv(const DistributionSpec& spec, double v);

// v - (1 - F(v)) / f(v). Throws when f(v) = 0.
double virtual_value(const DistributionSpec& spec, double v);

// psi(v) = 2 f(v)^2 + (1 - F(v)) f'(v): the numerator of the second
// derivative of 1/(1 - F). Nonnegative iff that transform is locally convex.
double regularity_psi(const DistributionSpec& spec, double v);

struct RegularityReport {
    bool is_regular = false;
    double min_psi = 0.0;
    double argmin_v = 0.0;
    std::size_t grid_size = 0;
};

// Scans psi on an even grid over the open support interior. A continuous
// density can only break convexity of 1/(1 - F) through negative psi, but a
// density with downward jumps (GapMixture) keeps psi >= 0 piecewise while
// the slope f/(1-F)^2 drops across the jump; such drops are folded into
// min_psi as discrete curvature so that is_regular <=> min_psi >= -tol.
RegularityReport check_regularity(const DistributionSpec& spec,
                                  std::size_t grid_size = 10001,
                                  double tol = 1e-9);

// n iid draws, sorted. Uniform, TruncExp and GapMixture invert the CDF;
// PerturbedUniform uses rejection from the uniform envelope with bound
// 1 + delta (acceptance rate >= 1/(1 + delta)).
ValueSample sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace mgdens
