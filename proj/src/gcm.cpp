#include "mgdens/gcm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mgdens {

namespace {

void check_nondecreasing(const StepFunction& lam) {
    double prev = lam.left_value;
    for (double y : lam.values) {
        if (y < prev) throw std::invalid_argument("gcm: step function is not nondecreasing");
        prev = y;
    }
}

}  // namespace

double ConvexMinorant::operator()(double v) const {
    if (v < a || v > b) throw std::domain_error("convex minorant evaluated outside [a, b]");
    auto it = std::upper_bound(knots.begin(), knots.end(), v);
    std::size_t j = it == knots.begin() ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
    if (j >= slopes.size()) j = slopes.size() - 1;
    return values[j] + slopes[j] * (v - knots[j]);
}

std::vector<ConstraintPoint> gcm_constraints(const StepFunction& lam, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("gcm: requires a < b");
    if (lam.knots.empty() || a >= lam.knots.back() || b <= lam.knots.front())
        throw std::domain_error("gcm: interval [a, b] lies outside the data range");
    check_nondecreasing(lam);

    std::vector<ConstraintPoint> pts;
    pts.push_back({a, lam(a)});
    auto first = std::upper_bound(lam.knots.begin(), lam.knots.end(), a);
    auto last = std::upper_bound(lam.knots.begin(), lam.knots.end(), b);
    for (auto it = first; it != last; ++it) pts.push_back({*it, lam.left_limit(*it)});
    if (pts.back().x != b) pts.push_back({b, lam.left_limit(b)});
    return pts;
}

ConvexMinorant lower_convex_hull(const std::vector<ConstraintPoint>& points, double merge_tol) {
    if (points.size() < 2) throw std::invalid_argument("lower_convex_hull: needs at least 2 points");
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i].x < points[i + 1].x))
            throw std::invalid_argument("lower_convex_hull: x coordinates must be strictly increasing");
    }

    std::vector<ConstraintPoint> hull;
    hull.reserve(points.size());
    for (const auto& p : points) {
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& q = hull[hull.size() - 1];
            const double cross = (q.x - o.x) * (p.y - o.y) - (q.y - o.y) * (p.x - o.x);
            if (cross <= 0.0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(p);
    }

    // merge segments whose slopes agree within merge_tol
    std::vector<ConstraintPoint> m;
    m.reserve(hull.size());
    for (const auto& p : hull) {
        m.push_back(p);
        while (m.size() >= 3) {
            const auto& o = m[m.size() - 3];
            const auto& q = m[m.size() - 2];
            const auto& r = m[m.size() - 1];
            const double s1 = (q.y - o.y) / (q.x - o.x);
            const double s2 = (r.y - q.y) / (r.x - q.x);
            if (s2 - s1 < merge_tol) {
                m.erase(m.end() - 2);
            } else {
                break;
            }
        }
    }

    ConvexMinorant cm;
    cm.a = points.front().x;
    cm.b = points.back().x;
    for (const auto& p : m) {
        cm.knots.push_back(p.x);
        cm.values.push_back(p.y);
    }
    for (std::size_t i = 0; i + 1 < m.size(); ++i) {
        cm.slopes.push_back((m[i + 1].y - m[i].y) / (m[i + 1].x - m[i].x));
    }
    return cm;
}

ConvexMinorant gcm_of_step(const StepFunction& lam, double a, double b) {
    return lower_convex_hull(gcm_constraints(lam, a, b));
}

double left_derivative(const ConvexMinorant& cm, double v) {
    if (v < cm.a || v > cm.b) throw std::domain_error("left_derivative: v outside [a, b]");
    auto it = std::lower_bound(cm.knots.begin(), cm.knots.end(), v);
    const std::size_t idx = static_cast<std::size_t>(it - cm.knots.begin());
    if (idx == 0) return cm.slopes.front();
    return cm.slopes[std::min(idx - 1, cm.slopes.size() - 1)];
}

std::optional<bool> switching_check(const StepFunction& lam, const ConvexMinorant& cm,
                                    double v, double c, double tie_tol) {
    if (!(v > cm.a && v < cm.b)) throw std::domain_error("switching_check: v must lie in (a, b)");
    if (!(c > 0.0)) throw std::invalid_argument("switching_check: requires c > 0");

    for (double s : cm.slopes) {
        if (std::abs(c - s) < tie_tol) return std::nullopt;
    }

    const bool slope_side = left_derivative(cm, v) <= c;

    // Brute-force minimizer of lam(s-) - c s over the constraint corners,
    // largest one under ties.
    const auto pts = gcm_constraints(lam, cm.a, cm.b);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) best = std::min(best, p.y - c * p.x);

    double tie_lo = std::numeric_limits<double>::infinity();
    double tie_hi = -std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
        if (p.y - c * p.x <= best + tie_tol) {
            tie_lo = std::min(tie_lo, p.x);
            tie_hi = std::max(tie_hi, p.x);
        }
    }
    if (tie_lo < v && tie_hi >= v) return std::nullopt;  // minimizers straddle v

    const bool argmin_side = tie_hi >= v;
    return slope_side == argmin_side;
}

}  // namespace mgdens
