#pragma once

#include <cstddef>
#include <stdexcept>

#include "mgdens/distributions.hpp"

namespace mgdens {

struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Constructive inputs to the two-point lower bound: the uniform density
// against its perturbed version at separation delta, with the Hellinger
// distance certified against the closed-form bound.
struct MinimaxCertificate {
    std::size_t n = 0;
    double delta = 0.0;
    double hellinger_sq = 0.0;
    double bound = 0.0;       // (2 sqrt(2) / 3) * delta^3
    double separation = 0.0;  // |f1(0.5) - f2(0.5)| = delta
    double psi_min = 0.0;     // min of the convexity numerator over a 10^4 grid
};

// Four-branch piecewise-linear perturbation: t+1 on [-1,0], 1-t on [0,2],
// t-3 on [2,3], zero elsewhere. Integrates to zero over [-1,3].
double perturbation_phi(double t);

// Integral of (sqrt(f1) - sqrt(f2))^2 over the shared support, by adaptive
// composite quadrature split at the kinks of either density. Absolute error
// target 1e-10. Throws when the supports differ.
double hellinger_sq(const DistributionSpec& f1, const DistributionSpec& f2,
                    std::size_t quad_points = 2048);

// delta(n) = (3 / (8 sqrt(2) n))^(1/3): the separation that makes the
// Hellinger bound equal 1/(4n).
double delta_schedule(std::size_t n);

// delta(n) < 1/3, the range on which the perturbed density is certifiably
// regular. False for n <= 7.
bool delta_in_regular_range(std::size_t n);

// (1/8) * (3 / (8 sqrt(2)))^(1/3): the constant in front of n^(-1/3) in the
// implied risk lower bound.
double minimax_lower_bound_constant();

// Assembles delta, the numeric Hellinger distance, the bound, the
// separation and the regularity margin for sample size n, and verifies
// every inequality. Throws CertificateError naming the first inequality
// that fails.
MinimaxCertificate build_certificate(std::size_t n);

}  // namespace mgdens
