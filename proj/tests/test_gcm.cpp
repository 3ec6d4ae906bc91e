#include <doctest.h>

#include <cmath>
#include <random>

#include "mgdens/gcm.hpp"
#include "mgdens/rng.hpp"
#include "test_support.hpp"

using namespace mgdens;
using test_support::giftwrap_lower_hull;
using test_support::random_step_instance;

namespace {

void check_hull_against_oracle(const std::vector<ConstraintPoint>& pts, const ConvexMinorant& cm) {
    const auto oracle = giftwrap_lower_hull(pts);
    REQUIRE(cm.knots.size() == oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        CHECK(cm.knots[i] == doctest::Approx(oracle[i].x).epsilon(1e-12));
        CHECK(cm.values[i] == doctest::Approx(oracle[i].y).epsilon(1e-12));
    }
    for (std::size_t i = 0; i + 1 < oracle.size(); ++i) {
        const double s = (oracle[i + 1].y - oracle[i].y) / (oracle[i + 1].x - oracle[i].x);
        CHECK(cm.slopes[i] == doctest::Approx(s).epsilon(1e-12));
    }
}

}  // namespace

TEST_SUITE("gcm") {

TEST_CASE("hull of the four-point example") {
    const std::vector<ConstraintPoint> pts{{0, 0}, {1, 2}, {2, 2}, {3, 6}};
    const ConvexMinorant cm = lower_convex_hull(pts);
    REQUIRE(cm.knots == std::vector<double>{0, 2, 3});
    REQUIRE(cm.values == std::vector<double>{0, 2, 6});
    REQUIRE(cm.slopes == std::vector<double>{1, 4});
}

TEST_CASE("hull of convex corner points interpolates all of them") {
    std::vector<ConstraintPoint> pts;
    for (int i = 0; i <= 8; ++i) {
        const double x = 0.25 * i;
        pts.push_back({x, x * x});
    }
    const ConvexMinorant cm = lower_convex_hull(pts);
    REQUIRE(cm.knots.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(cm.values[i] == pts[i].y);
}

TEST_CASE("two points give a single segment") {
    const ConvexMinorant cm = lower_convex_hull({{0.5, 1.0}, {2.0, 4.0}});
    REQUIRE(cm.slopes.size() == 1);
    CHECK(cm.slopes[0] == doctest::Approx(2.0));
}

TEST_CASE("left derivative conventions") {
    const ConvexMinorant cm = lower_convex_hull({{0, 0}, {2, 2}, {3, 6}});
    CHECK(left_derivative(cm, 1.5) == doctest::Approx(1.0));
    CHECK(left_derivative(cm, 2.0) == doctest::Approx(1.0));  // incoming slope at a knot
    CHECK(left_derivative(cm, 2.5) == doctest::Approx(4.0));
    CHECK(left_derivative(cm, 0.0) == doctest::Approx(1.0));  // first segment at v = a
    CHECK(left_derivative(cm, 3.0) == doctest::Approx(4.0));
    CHECK_THROWS_AS(left_derivative(cm, 3.1), std::domain_error);
    CHECK_THROWS_AS(left_derivative(cm, -0.1), std::domain_error);
}

TEST_CASE("constraint corners of a step function") {
    StepFunction lam;
    lam.left_value = 0.0;
    lam.knots = {1.0, 2.0, 3.0};
    lam.values = {2.0, 2.0, 6.0};  // knot at 2 carries no jump
    const auto pts = gcm_constraints(lam, 0.0, 3.0);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].x == 0.0);
    CHECK(pts[0].y == 0.0);  // value at a
    CHECK(pts[1].x == 1.0);
    CHECK(pts[1].y == 0.0);  // left limit at the first jump
    CHECK(pts[2].x == 2.0);
    CHECK(pts[2].y == 2.0);
    CHECK(pts[3].x == 3.0);
    CHECK(pts[3].y == 2.0);

    SUBCASE("interval ending between knots appends the left limit at b") {
        const auto q = gcm_constraints(lam, 0.0, 2.5);
        REQUIRE(q.size() == 4);
        CHECK(q[3].x == 2.5);
        CHECK(q[3].y == 2.0);
    }
    SUBCASE("invalid intervals") {
        CHECK_THROWS_AS(gcm_constraints(lam, 2.0, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(gcm_constraints(lam, 4.0, 5.0), std::domain_error);
        CHECK_THROWS_AS(gcm_constraints(lam, -2.0, 0.5), std::domain_error);
    }
}

TEST_CASE("random instances match the gift-wrapping oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = random_step_instance(rng);
        const auto pts = gcm_constraints(inst.lam, inst.a, inst.b);
        const ConvexMinorant cm = gcm_of_step(inst.lam, inst.a, inst.b);
        check_hull_against_oracle(pts, cm);

        // minorant property at corners and random interior points
        for (const auto& p : pts) CHECK(cm(p.x) <= p.y + 1e-12);
        for (int k = 0; k < 200; ++k) {
            const double x = inst.a + (inst.b - inst.a) * uniform01(rng);
            CHECK(cm(x) <= inst.lam(x) + 1e-12);
        }

        // convexity: slopes strictly increasing
        for (std::size_t i = 0; i + 1 < cm.slopes.size(); ++i) CHECK(cm.slopes[i] < cm.slopes[i + 1]);

        // idempotence: the hull of its own vertices is itself
        std::vector<ConstraintPoint> vertices;
        for (std::size_t i = 0; i < cm.knots.size(); ++i) vertices.push_back({cm.knots[i], cm.values[i]});
        const ConvexMinorant again = lower_convex_hull(vertices);
        REQUIRE(again.knots == cm.knots);
        REQUIRE(again.values == cm.values);
        REQUIRE(again.slopes == cm.slopes);

        // left derivative nondecreasing in v
        double prev = -std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 50; ++k) {
            const double x = k == 50 ? inst.b : inst.a + (inst.b - inst.a) * k / 50.0;
            const double d = left_derivative(cm, x);
            CHECK(d >= prev);
            prev = d;
        }
    }
}

TEST_CASE("switching relation on a handcrafted instance") {
    StepFunction lam;
    lam.left_value = 0.0;
    lam.knots = {1.0, 2.0, 3.0};
    lam.values = {2.0, 2.0, 6.0};
    const ConvexMinorant cm = gcm_of_step(lam, 0.0, 3.0);
    // hull corners (0,0),(1,0),(3,2): slopes 0 and 1
    const auto r = switching_check(lam, cm, 1.5, 2.0);
    REQUIRE(r.has_value());
    CHECK(*r);
    const auto r2 = switching_check(lam, cm, 1.5, 0.5);
    REQUIRE(r2.has_value());
    CHECK(*r2);
    // tie with a hull slope is flagged indeterminate
    CHECK_FALSE(switching_check(lam, cm, 1.5, cm.slopes[1]).has_value());
}

TEST_CASE("switching relation holds on random small-sample transforms") {
    std::mt19937_64 rng(5150);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng() % 29;
        std::vector<double> vals(n);
        for (auto& v : vals) v = uniform01(rng);
        const auto s = ValueSample::from_unsorted(vals);
        const StepFunction lam = lambda_n(s);
        const double a = -0.05, b = 1.05;
        const ConvexMinorant cm = gcm_of_step(lam, a, b);

        const double v = a + (b - a) * (0.05 + 0.9 * uniform01(rng));
        const double c = (0.1 + 2.0 * uniform01(rng)) * std::max(1e-3, cm.slopes.back());
        const auto res = switching_check(lam, cm, v, c);
        if (res.has_value()) {
            ++checked;
            CHECK(*res);
        }
    }
    CHECK(checked > 900);  // ties should be rare
}

}  // TEST_SUITE
