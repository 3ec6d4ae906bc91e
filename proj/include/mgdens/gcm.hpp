#pragma once

#include <optional>
#include <vector>

#include "mgdens/empirical.hpp"

namespace mgdens {

// Piecewise-linear convex function on [a, b]: hull vertices plus the slope
// of each segment. Slopes are strictly increasing; collinear segments are
// merged during construction.
struct ConvexMinorant {
    std::vector<double> knots;   // sorted, first = a, last = b
    std::vector<double> values;  // one per knot
    std::vector<double> slopes;  // one per segment, strictly increasing
    double a = 0.0;
    double b = 0.0;

    double operator()(double v) const;  // linear interpolation; throws outside [a,b]
};

struct ConstraintPoint {
    double x = 0.0;
    double y = 0.0;
};

// Corner points a convex function must stay below to minorize a
// right-continuous nondecreasing step function on [a, b]: the value at a,
// the left limit at every knot in (a, b], and the left limit at b when no
// knot sits exactly at b. A convex g satisfies g <= lam on [a, b] iff it
// satisfies g(x) <= y at these points.
std::vector<ConstraintPoint> gcm_constraints(const StepFunction& lam, double a, double b);

// Lower convex hull of points sorted by strictly increasing x, via a single
// monotone-chain pass; adjacent segments whose slopes differ by less than
// merge_tol are merged.
ConvexMinorant lower_convex_hull(const std::vector<ConstraintPoint>& points,
                                 double merge_tol = 1e-12);

// Greatest convex minorant of the step function on [a, b]. The minorant is
// taken over [a, b] only; a minorant taken over a wider range and then
// restricted can differ near the endpoints, though the two agree away from
// them.
ConvexMinorant gcm_of_step(const StepFunction& lam, double a, double b);

// Slope of the segment ending at or containing v, approached from the left;
// at v = a, the first segment's slope. This is the density-transform
// estimate read off the minorant.
double left_derivative(const ConvexMinorant& cm, double v);

// Checks the switching relation: left_derivative(v) <= c holds iff the
// largest minimizer of lam(s-) - c s over the constraint corners lies at or
// beyond v. Returns nullopt (indeterminate) when c ties a hull slope or the
// near-minimizers straddle v within tie_tol.
std::optional<bool> switching_check(const StepFunction& lam, const ConvexMinorant& cm,
                                    double v, double c, double tie_tol = 1e-12);

}  // namespace mgdens
