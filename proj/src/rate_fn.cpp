#include "ldphase/rate_fn.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ldphase/errors.hpp"
#include "ldphase/roots.hpp"

namespace ldphase {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_unit(double u, const char* what) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw DomainError(std::string(what) + ": argument must lie in [0,1], got " + std::to_string(u));
    }
}

void require_open_unit(double u, const char* what) {
    if (!(u > 0.0 && u < 1.0)) {
        throw DomainError(std::string(what) + ": argument must lie in (0,1), got " + std::to_string(u));
    }
}

double xlogy_ratio(double x, double y) {
    // x log(x / y) with 0 log 0 = 0
    return x == 0.0 ? 0.0 : x * std::log(x / y);
}

}  // namespace

double entropy(double u) {
    require_unit(u, "entropy");
    const double a = u == 0.0 ? 0.0 : u * std::log(u);
    const double b = u == 1.0 ? 0.0 : (1.0 - u) * std::log1p(-u);
    return a + b;
}

double logit(double u) {
    require_open_unit(u, "logit");
    return std::log(u) - std::log1p(-u);
}

double logistic(double b) {
    if (b >= 0.0) return 1.0 / (1.0 + std::exp(-b));
    const double e = std::exp(b);
    return e / (1.0 + e);
}

double rate(double u, double p) {
    require_unit(u, "rate");
    require_open_unit(p, "rate (p)");
    return xlogy_ratio(u, p) + xlogy_ratio(1.0 - u, 1.0 - p);
}

double rate_d1(double u, double p) {
    require_open_unit(u, "rate_d1");
    require_open_unit(p, "rate_d1 (p)");
    return logit(u) - logit(p);
}

double rate_d2(double u) {
    require_open_unit(u, "rate_d2");
    return 1.0 / (u * (1.0 - u));
}

double rate_d1_extended(double u, double p) {
    require_unit(u, "rate_d1_extended");
    if (u == 0.0) return -kInf;
    if (u == 1.0) return kInf;
    return rate_d1(u, p);
}

GammaCurve::GammaCurve(double p, double gamma) : p_(p), gamma_(gamma), log_odds_(0.0) {
    require_open_unit(p, "GammaCurve (p)");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw DomainError("GammaCurve: gamma must be a positive finite number");
    }
    log_odds_ = logit(p);
}

GammaCurve GammaCurve::from_log_odds(double log_odds, double gamma) {
    if (!std::isfinite(log_odds)) throw DomainError("GammaCurve: log-odds must be finite");
    const double p = logistic(log_odds);
    GammaCurve c(p, gamma);  // validates p and gamma
    return GammaCurve(p, gamma, log_odds);
}

double curve_value(const GammaCurve& c, double x) {
    require_unit(x, "curve_value");
    return rate(std::pow(x, 1.0 / c.gamma()), c.p());
}

double curve_slope_q(const GammaCurve& c, double q) {
    const double g = c.gamma();
    return std::pow(q, 1.0 - g) * (logit(q) - c.log_odds()) / g;
}

double curve_value_shifted_q(const GammaCurve& c, double q) {
    return entropy(q) - q * c.log_odds();
}

double convexity_indicator_q(const GammaCurve& c, double q) {
    return 1.0 / (1.0 - q) - (c.gamma() - 1.0) * (logit(q) - c.log_odds());
}

double curve_d1(const GammaCurve& c, double x) {
    require_open_unit(x, "curve_d1");
    return curve_slope_q(c, std::pow(x, 1.0 / c.gamma()));
}

double curve_d2(const GammaCurve& c, double x) {
    require_open_unit(x, "curve_d2");
    const double g = c.gamma();
    const double q = std::pow(x, 1.0 / g);
    return std::pow(q, 1.0 - 2.0 * g) / (g * g) * convexity_indicator_q(c, q);
}

double curve_d1_extended(const GammaCurve& c, double x) {
    require_unit(x, "curve_d1_extended");
    if (x == 1.0) return kInf;
    if (x == 0.0) {
        // slope q^{1-gamma} h_p'(q)/gamma as q -> 0: -inf for gamma >= 1, 0- for gamma < 1
        return c.gamma() >= 1.0 ? -kInf : -0.0;
    }
    return curve_d1(c, x);
}

double p0(double gamma) {
    if (!(gamma > 1.0)) throw DomainError("p0: gamma must exceed 1 (the curve is convex otherwise)");
    const double g1 = gamma - 1.0;
    return g1 / (g1 + std::exp(gamma / g1));
}

bool curve_is_convex(const GammaCurve& c) {
    const double g = c.gamma();
    if (g <= 1.0) return true;
    // minimum of the convexity indicator, attained at q = (g-1)/g
    const double min_indicator = g - (g - 1.0) * std::log(g - 1.0) + (g - 1.0) * c.log_odds();
    return min_indicator >= 0.0;
}

std::optional<InflectionPoints> inflection_points(const GammaCurve& c) {
    if (curve_is_convex(c)) return std::nullopt;
    const double g = c.gamma();
    const double q_mid = (g - 1.0) / g;
    auto indicator = [&](double q) { return convexity_indicator_q(c, q); };
    // indicator is decreasing on (0, q_mid), increasing on (q_mid, 1), positive at q = p
    const auto q_a = roots::bisect(indicator, c.p(), q_mid, 1e-16);
    const auto q_b = roots::bisect(indicator, q_mid, 1.0 - 1e-15, 1e-16);
    if (!q_a || !q_b) {
        // only reachable within rounding of p0, where the concave window is empty
        return std::nullopt;
    }
    return InflectionPoints{*q_a, *q_b, std::pow(*q_a, g), std::pow(*q_b, g)};
}

}  // namespace ldphase
