#pragma once

#include <optional>
#include <utility>

namespace ldphase {

/// h(u) = u log u + (1-u) log(1-u), with 0 log 0 = 0.
double entropy(double u);

/// logit(u) = log(u / (1-u)), evaluated without forming 1-u for small u.
double logit(double u);

/// Inverse of logit: 1 / (1 + e^{-b}).
double logistic(double b);

/// Binomial rate function h_p(u) = u log(u/p) + (1-u) log((1-u)/(1-p)).
double rate(double u, double p);

/// h_p'(u) = logit(u) - logit(p); throws DomainError at u in {0, 1}.
double rate_d1(double u, double p);

/// h_p''(u) = 1 / (u (1-u)); independent of p.
double rate_d2(double u);

/// Same as rate_d1 but returns -inf / +inf at the endpoints instead of throwing.
double rate_d1_extended(double u, double p);

/// The curve x -> h_p(x^{1/gamma}) on [0,1].
///
/// `gamma` is the exponent d for d-regular subgraph counts and e(H)*alpha for
/// the exponential random graph reduction. The log-odds of p is cached so
/// that curves built from a log-odds parameter do not lose precision through
/// a round trip via p.
class GammaCurve {
public:
    GammaCurve(double p, double gamma);

    /// Curve whose edge density is logistic(log_odds), keeping log_odds exactly.
    static GammaCurve from_log_odds(double log_odds, double gamma);

    double p() const noexcept { return p_; }
    double gamma() const noexcept { return gamma_; }
    double log_odds() const noexcept { return log_odds_; }

private:
    GammaCurve(double p, double gamma, double log_odds) noexcept
        : p_(p), gamma_(gamma), log_odds_(log_odds) {}

    double p_;
    double gamma_;
    double log_odds_;
};

/// h_p(x^{1/gamma}) for x in [0, 1].
double curve_value(const GammaCurve& c, double x);
/// (1/gamma) x^{1/gamma - 1} h_p'(x^{1/gamma}) for x in (0, 1).
double curve_d1(const GammaCurve& c, double x);
/// Second derivative of the curve for x in (0, 1).
double curve_d2(const GammaCurve& c, double x);
/// curve_d1 extended by its signed limits at x = 0 and x = 1.
double curve_d1_extended(const GammaCurve& c, double x);

// q-coordinate forms (x = q^gamma). These are what the minorant and ERG
// solvers work with, since touch points near 0 or 1 lose resolution in x.

/// h_p(q) up to the additive constant -log(1-p): h(q) - q logit(p).
double curve_value_shifted_q(const GammaCurve& c, double q);
/// Slope of the curve at x = q^gamma, i.e. q^{1-gamma} h_p'(q) / gamma.
double curve_slope_q(const GammaCurve& c, double q);
/// 1/(1-q) - (gamma-1) h_p'(q): same sign as curve_d2 at x = q^gamma.
double convexity_indicator_q(const GammaCurve& c, double q);

/// p0(gamma) = (gamma-1) / (gamma-1 + e^{gamma/(gamma-1)}), gamma > 1.
double p0(double gamma);

/// True when the curve is convex on [0, 1]: gamma <= 1 or p >= p0(gamma).
bool curve_is_convex(const GammaCurve& c);

/// Inflection points of a non-convex curve, in both coordinates.
struct InflectionPoints {
    double q_a;
    double q_b;
    double x_a;
    double x_b;
};

/// None when the curve is convex; otherwise the two roots of curve_d2 with
/// p^gamma < x_a < x_b < 1, bracketed on either side of q = (gamma-1)/gamma.
std::optional<InflectionPoints> inflection_points(const GammaCurve& c);

}  // namespace ldphase
