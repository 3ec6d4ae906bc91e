#include "mgdens/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace mgdens {

namespace {

// Adaptive Simpson on [lo, hi]; the integrands here are smooth between
// kinks, so this converges quickly.
double adaptive_simpson(const std::function<double(double)>& g, double lo, double hi,
                        double f_lo, double f_mid, double f_hi, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), mh = 0.5 * (mid + hi);
    const double f_lm = g(lm), f_mh = g(mh);
    const double whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
    const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lm + f_mid);
    const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_mh + f_hi);
    const double err = left + right - whole;
    if (depth <= 0 || std::abs(err) < 15.0 * tol) return left + right + err / 15.0;
    return adaptive_simpson(g, lo, mid, f_lo, f_lm, f_mid, 0.5 * tol, depth - 1) +
           adaptive_simpson(g, mid, hi, f_mid, f_mh, f_hi, 0.5 * tol, depth - 1);
}

double integrate_piece(const std::function<double(double)>& g, double lo, double hi, double tol) {
    const double mid = 0.5 * (lo + hi);
    return adaptive_simpson(g, lo, hi, g(lo), g(mid), g(hi), tol, 40);
}

}  // namespace

double perturbation_phi(double t) {
    if (t < -1.0 || t > 3.0) return 0.0;
    if (t <= 0.0) return t + 1.0;
    if (t <= 2.0) return 1.0 - t;
    return t - 3.0;
}

double hellinger_sq(const DistributionSpec& f1, const DistributionSpec& f2,
                    std::size_t quad_points) {
    if (quad_points < 128) throw std::invalid_argument("hellinger_sq: quad_points must be >= 128");
    const double lo = f1.support_lo(), hi = f1.support_hi();
    if (lo != f2.support_lo() || hi != f2.support_hi())
        throw std::invalid_argument("hellinger_sq: mismatched supports");

    std::vector<double> cuts{lo, hi};
    for (const auto& spec : {std::cref(f1), std::cref(f2)}) {
        for (double k : spec.get().kinks()) {
            if (k > lo && k < hi) cuts.push_back(k);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto integrand = [&](double v) {
        const double d = std::sqrt(pdf(f1, v)) - std::sqrt(pdf(f2, v));
        return d * d;
    };

    // Initial panels shared across pieces in proportion to length, then
    // adaptive refinement per panel toward the 1e-10 overall target.
    double total = 0.0;
    std::size_t panels_total = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        panels_total += 1 + static_cast<std::size_t>(quad_points * (cuts[i + 1] - cuts[i]) / (hi - lo));
    const double panel_tol = 1e-11 / static_cast<double>(panels_total);

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double plo = cuts[i], phi_ = cuts[i + 1];
        const auto panels =
            1 + static_cast<std::size_t>(quad_points * (phi_ - plo) / (hi - lo));
        const double w = (phi_ - plo) / static_cast<double>(panels);
        for (std::size_t k = 0; k < panels; ++k) {
            total += integrate_piece(integrand, plo + w * static_cast<double>(k),
                                     plo + w * static_cast<double>(k + 1), panel_tol);
        }
    }
    return total;
}

double delta_schedule(std::size_t n) {
    if (n < 1) throw std::invalid_argument("delta_schedule: n must be >= 1");
    return std::cbrt(3.0 / (8.0 * std::sqrt(2.0) * static_cast<double>(n)));
}

bool delta_in_regular_range(std::size_t n) { return delta_schedule(n) < 1.0 / 3.0; }

double minimax_lower_bound_constant() { return 0.125 * std::cbrt(3.0 / (8.0 * std::sqrt(2.0))); }

MinimaxCertificate build_certificate(std::size_t n) {
    MinimaxCertificate cert;
    cert.n = n;
    cert.delta = delta_schedule(n);
    if (!delta_in_regular_range(n)) {
        throw CertificateError("build_certificate: delta(n) >= 1/3 at n = " + std::to_string(n) +
                               "; the regularity margin of the perturbed density vanishes");
    }

    const DistributionSpec f1{Uniform{0.0, 1.0}};
    const DistributionSpec f2{PerturbedUniform{cert.delta}};

    cert.hellinger_sq = hellinger_sq(f1, f2);
    cert.bound = (2.0 * std::sqrt(2.0) / 3.0) * cert.delta * cert.delta * cert.delta;
    // |f1(0.5) - f2(0.5)| = |1 - (1 + delta)| = delta by construction.
    cert.separation = cert.delta;
    cert.psi_min = check_regularity(f2, 10000, 0.0).min_psi;

    if (!(cert.hellinger_sq <= cert.bound + 1e-10))
        throw CertificateError("certificate failed: hellinger_sq <= (2 sqrt(2)/3) delta^3");
    if (!(cert.hellinger_sq <= 1.0 / (4.0 * static_cast<double>(n))))
        throw CertificateError("certificate failed: hellinger_sq <= 1/(4n)");
    if (!(cert.psi_min >= 0.0))
        throw CertificateError("certificate failed: psi_min >= 0");
    return cert;
}

}  // namespace mgdens
