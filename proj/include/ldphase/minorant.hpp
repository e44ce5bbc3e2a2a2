#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ldphase/rate_fn.hpp"

namespace ldphase {

/// Lower common tangent of a convex-concave-convex curve x -> h_p(x^{1/gamma}).
///
/// Touch points are stored in q-coordinates (x = q^gamma); the line is
/// y = slope * x + intercept in the (x, h_p) plane.
struct DoubleTangent {
    double q_lo;
    double q_hi;
    double slope;
    double intercept;
    double residual;  ///< |difference of the two tangent-line offsets| at the solution

    double line(double x) const noexcept { return slope * x + intercept; }
};

/// The double tangent, or none when the curve is convex.
///
/// Slope bisection: for a trial slope the two local minima of
/// curve(x) - slope*x (one per convex branch) are located by derivative root
/// finding, and the slope is moved until the minima agree. Throws
/// ConvergenceError if the final offset mismatch exceeds 1e-9.
std::optional<DoubleTangent> double_tangent(const GammaCurve& c);

/// gamma = 2 touch points from the zeros of log(x/(1-x)) - (1-2x) log(p/(1-p)).
/// None for p >= p0(2).
std::optional<std::pair<double, double>> d2_touch_points(double p);

/// Convex minorant of the curve at x in [0, 1].
double minorant_value(const GammaCurve& c, double x);

/// True iff (q^gamma, h_p(q)) lies on the convex minorant.
bool on_minorant(const GammaCurve& c, double q);

/// Closed-form gamma = 2 phase boundary [1 + (1/r - 1)^{1/(1-2r)}]^{-1}.
/// Uses the limit 1/(1+e^2) for |r - 1/2| < 1e-8.
double d2_boundary_p(double r);

/// (p, q) in B_gamma, i.e. (q^gamma, h_p(q)) strictly above the minorant.
bool b_region_test(double p, double q, double gamma);

struct BoundaryPoint {
    double r;
    double p_critical;  ///< 0 when no p in [1e-6, p0(gamma)] puts r in B_gamma
};

/// Critical p for each r: (p, r) is in B_gamma exactly for p < p_critical.
/// Bisection on p over [1e-6, p0(gamma)] to 1e-12.
std::vector<BoundaryPoint> boundary_curve(double gamma, std::span<const double> r_grid);

/// CSV with header `r,p_critical,gamma`.
void write_boundary_csv(std::ostream& out, double gamma, std::span<const BoundaryPoint> points);

}  // namespace ldphase
