#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mgdens/distributions.hpp"
#include "mgdens/rng.hpp"
#include "test_support.hpp"

using namespace mgdens;
using test_support::ks_statistic;
using test_support::simpson_with_cuts;

namespace {

const DistributionSpec kUnif{Uniform{0.0, 1.0}};
const DistributionSpec kTexp{TruncExp{1.0, 0.0, 1.0}};
const DistributionSpec kGap{GapMixture{0.5, 0.0, 0.1, 0.9, 1.0}};

std::vector<DistributionSpec> regular_specs() {
    return {kUnif, DistributionSpec{Uniform{2.0, 5.0}}, kTexp,
            DistributionSpec{TruncExp{2.5, 1.0, 3.0}}, DistributionSpec{PerturbedUniform{0.05}},
            DistributionSpec{PerturbedUniform{0.1}}, DistributionSpec{PerturbedUniform{0.25}},
            DistributionSpec{PerturbedUniform{0.3}}};
}

double numeric_cdf(const DistributionSpec& spec, double v) {
    return simpson_with_cuts([&](double x) { return pdf(spec, x); }, spec.support_lo(), v,
                             spec.kinks());
}

}  // namespace

TEST_SUITE("distributions") {

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((DistributionSpec{Uniform{1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS((DistributionSpec{TruncExp{0.0, 0.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS((DistributionSpec{PerturbedUniform{0.4}}), std::invalid_argument);
    CHECK_THROWS_AS((DistributionSpec{PerturbedUniform{1.0 / 3.0}}), std::invalid_argument);
    CHECK_THROWS_AS((DistributionSpec{PerturbedUniform{0.0}}), std::invalid_argument);
    CHECK_THROWS_AS((DistributionSpec{GapMixture{0.5, 0.0, 0.5, 0.4, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(pdf(kUnif, 1.5), std::domain_error);
    CHECK_THROWS_AS(cdf(kUnif, -0.5), std::domain_error);
}

TEST_CASE("uniform basics") {
    CHECK(pdf(kUnif, 0.3) == 1.0);
    CHECK(cdf(kUnif, 0.5) == 0.5);
    CHECK(pdf_deriv(kUnif, 0.7) == 0.0);
    CHECK(virtual_value(kUnif, 0.5) == doctest::Approx(0.0));
    CHECK(virtual_value(kUnif, 0.75) == doctest::Approx(0.5));
    CHECK(regularity_psi(kUnif, 0.3) == 2.0);
}

TEST_CASE("perturbed uniform piecewise density") {
    CHECK(pdf(DistributionSpec{PerturbedUniform{0.25}}, 0.5) == 1.25);
    CHECK(pdf(DistributionSpec{PerturbedUniform{0.1}}, 0.2) == 1.0);  // outside the window
    const DistributionSpec pu{PerturbedUniform{0.1}};
    CHECK(pdf(pu, 0.45) == doctest::Approx(0.45 + 0.6));       // rising branch
    CHECK(pdf(pu, 0.65) == doctest::Approx(-0.65 + 1.6));      // falling branch
    CHECK(pdf(pu, 0.75) == doctest::Approx(0.75 + 0.5 - 0.3)); // recovery branch
    CHECK(pdf_deriv(pu, 0.45) == 1.0);
    CHECK(pdf_deriv(pu, 0.55) == -1.0);
    CHECK(pdf_deriv(pu, 0.75) == 1.0);
    CHECK(pdf_deriv(pu, 0.2) == 0.0);
}

TEST_CASE("perturbed uniform cdf agrees with the quadrature oracle") {
    const DistributionSpec pu{PerturbedUniform{0.1}};
    CHECK(cdf(pu, 0.4 - 1e-12) == doctest::Approx(0.4).epsilon(1e-10));  // F = v left of the window
    CHECK(cdf(pu, 0.55) == doctest::Approx(numeric_cdf(pu, 0.55)).epsilon(1e-10));
    for (double v : {0.42, 0.5, 0.62, 0.71, 0.83}) {
        CHECK(cdf(pu, v) == doctest::Approx(numeric_cdf(pu, v)).epsilon(1e-10));
    }
    // same for a delta whose window is truncated by the support edge
    const DistributionSpec wide{PerturbedUniform{0.2}};
    for (double v : {0.35, 0.5, 0.8, 0.95}) {
        CHECK(cdf(wide, v) == doctest::Approx(numeric_cdf(wide, v)).epsilon(1e-10));
    }
}

TEST_CASE("perturbed uniform virtual value against the numeric route") {
    const DistributionSpec pu{PerturbedUniform{0.1}};
    const double direct = virtual_value(pu, 0.5);
    const double numeric = 0.5 - (1.0 - numeric_cdf(pu, 0.5)) / pdf(pu, 0.5);
    CHECK(direct == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(direct == doctest::Approx(numeric).epsilon(1e-9));
}

TEST_CASE("densities integrate to one") {
    for (const auto& spec :
         {kUnif, kTexp, kGap, DistributionSpec{PerturbedUniform{0.05}},
          DistributionSpec{PerturbedUniform{0.1}}, DistributionSpec{PerturbedUniform{1.0 / 6.0}}}) {
        const double mass = simpson_with_cuts([&](double v) { return pdf(spec, v); },
                                              spec.support_lo(), spec.support_hi(), spec.kinks());
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("numeric derivative of cdf matches pdf away from kinks") {
    const double h = 1e-6;
    for (const auto& spec :
         {kUnif, kTexp, kGap, DistributionSpec{PerturbedUniform{0.1}},
          DistributionSpec{Uniform{2.0, 5.0}}, DistributionSpec{TruncExp{2.5, 1.0, 3.0}},
          DistributionSpec{PerturbedUniform{0.3}}}) {
        const double lo = spec.support_lo(), hi = spec.support_hi();
        const auto kinks = spec.kinks();
        int tested = 0;
        for (int i = 0; i < 100; ++i) {
            const double v = lo + (hi - lo) * (i + 0.5) / 100.0;
            bool near_kink = false;
            for (double k : kinks) near_kink = near_kink || std::abs(v - k) < 1e-4;
            if (near_kink) continue;
            const double num = (cdf(spec, v + h) - cdf(spec, v - h)) / (2.0 * h);
            CHECK(num == doctest::Approx(pdf(spec, v)).epsilon(1e-6).scale(1.0));
            ++tested;
        }
        CHECK(tested >= 90);
    }
}

TEST_CASE("psi sign matches the second difference of 1/(1-F) at non-kink points") {
    const double h = 1e-4;
    for (const auto& spec : {kUnif, kTexp, kGap, DistributionSpec{PerturbedUniform{0.1}}}) {
        const double lo = spec.support_lo(), hi = spec.support_hi();
        const auto kinks = spec.kinks();
        for (int i = 2; i < 98; ++i) {
            const double v = lo + (hi - lo) * (i + 0.5) / 100.0;
            bool near_kink = false;
            for (double k : kinks) near_kink = near_kink || std::abs(v - k) < 2.0 * h * (hi - lo) + 1e-3;
            if (near_kink || cdf(spec, v + h) >= 1.0) continue;
            auto lam = [&](double x) { return 1.0 / (1.0 - cdf(spec, x)); };
            const double second = lam(v + h) - 2.0 * lam(v) + lam(v - h);
            const double psi = regularity_psi(spec, v);
            if (std::abs(psi) > 1e-3) {
                CHECK(second * psi >= 0.0);
            } else {
                CHECK(std::abs(second) < 1e-6);
            }
        }
    }
}

TEST_CASE("regularity checker ground truth") {
    CHECK(check_regularity(kUnif).is_regular);
    CHECK(check_regularity(kUnif).min_psi == doctest::Approx(2.0));
    CHECK(check_regularity(kTexp).is_regular);
    for (double d : {0.05, 0.2, 0.3}) {
        CAPTURE(d);
        CHECK(check_regularity(DistributionSpec{PerturbedUniform{d}}).is_regular);
    }
    const auto gap = check_regularity(kGap);
    CHECK_FALSE(gap.is_regular);
    CHECK(gap.min_psi < 0.0);
    CHECK(gap.argmin_v > 0.05);
    CHECK(gap.argmin_v < 0.95);
    CHECK_THROWS_AS(check_regularity(kUnif, 2), std::invalid_argument);
}

TEST_CASE("psi branch value from the closed form") {
    // rising branch at the centre: (3/2)(1 + d)^2 + d(1 + d) at d = 0.25
    CHECK(regularity_psi(DistributionSpec{PerturbedUniform{0.25}}, 0.5) == 2.65625);
}

TEST_CASE("virtual value is nondecreasing exactly when the checker says regular") {
    auto monotone_on_grid = [](const DistributionSpec& spec) {
        const double lo = spec.support_lo(), hi = spec.support_hi();
        double prev = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < 400; ++i) {
            const double v = lo + (hi - lo) * (i + 0.5) / 400.0;
            double phi;
            try {
                phi = virtual_value(spec, v);
            } catch (const std::domain_error&) {
                return false;  // undefined somewhere: not nondecreasing on the grid
            }
            if (phi < prev - 1e-9) return false;
            prev = phi;
        }
        return true;
    };
    for (const auto& spec : regular_specs()) {
        CAPTURE(spec.family_name());
        CHECK(monotone_on_grid(spec));
        CHECK(check_regularity(spec).is_regular);
    }
    CHECK_FALSE(monotone_on_grid(kGap));
    CHECK_FALSE(check_regularity(kGap).is_regular);
}

TEST_CASE("sampling is deterministic and in-support") {
    const auto s1 = sample(kUnif, 5, 7);
    const auto s2 = sample(kUnif, 5, 7);
    REQUIRE(s1.values == s2.values);
    for (double v : s1.values) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
    CHECK(sample(kUnif, 5, 8).values != s1.values);
}

TEST_CASE("sampler matches its own cdf (KS)") {
    const DistributionSpec pu{PerturbedUniform{0.1}};
    const auto s = sample(pu, 100000, 42);
    CHECK(ks_statistic(s.values, [&](double v) { return cdf(pu, v); }) < 0.01);
}

TEST_CASE("truncated exponential sample mean") {
    const auto s = sample(kTexp, 100000, 11);
    const double mean = test_support::mean(s.values);
    // E[V] = (1 - 2/e) / (1 - 1/e); sd of the mean is below 1e-3
    const double truth = (1.0 - 2.0 * std::exp(-1.0)) / (1.0 - std::exp(-1.0));
    const double sd = std::sqrt(test_support::variance(s.values) / 100000.0);
    CHECK(std::abs(mean - truth) < 3.0 * sd);
}

TEST_CASE("dkw-style sanity bound for every family") {
    const std::size_t n = 10000;
    const double bound = 3.0 * 1.36 / std::sqrt(static_cast<double>(n));
    std::uint64_t seed = 100;
    for (const auto& spec : {kUnif, kTexp, kGap, DistributionSpec{PerturbedUniform{0.1}}}) {
        const auto s = sample(spec, n, seed++);
        CHECK(ks_statistic(s.values, [&](double v) { return cdf(spec, v); }) <= bound);
    }
}

TEST_CASE("gap mixture has zero density in the gap and errors in virtual value there") {
    CHECK(pdf(kGap, 0.5) == 0.0);
    CHECK(cdf(kGap, 0.5) == 0.5);
    CHECK_THROWS_AS(virtual_value(kGap, 0.5), std::domain_error);
    CHECK(pdf(kGap, 0.05) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(pdf(kGap, 0.95) == doctest::Approx(5.0).epsilon(1e-12));
}

}  // TEST_SUITE
