#include "ldphase/minorant.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ldphase/errors.hpp"
#include "ldphase/roots.hpp"

namespace ldphase {
namespace {

constexpr double kQTol = 1e-16;
constexpr double kQMax = 1.0 - 1e-15;
constexpr int kOuterIterations = 200;

struct BranchMinima {
    double q_left;
    double q_right;
    double gap;  // offset(left) - offset(right)
};

}  // namespace

std::optional<DoubleTangent> double_tangent(const GammaCurve& c) {
    const auto ip = inflection_points(c);
    if (!ip) return std::nullopt;
    const double g = c.gamma();

    auto slope_at = [&](double q) { return curve_slope_q(c, q); };
    auto offset = [&](double q, double beta) { return curve_value_shifted_q(c, q) - beta * std::pow(q, g); };

    auto minima = [&](double beta) -> BranchMinima {
        auto f = [&](double q) { return slope_at(q) - beta; };
        const auto left = roots::bisect(f, c.p(), ip->q_a, kQTol);
        // for tiny p the right touch point can sit within 1e-15 of q = 1; pin it there
        const auto right = f(kQMax) < 0.0 ? std::optional<double>(kQMax) : roots::bisect(f, ip->q_b, kQMax, kQTol);
        if (!left || !right) {
            std::ostringstream msg;
            msg << "double_tangent: slope " << beta << " not bracketed on a convex branch (p=" << c.p()
                << ", gamma=" << g << ")";
            throw ConvergenceError(msg.str());
        }
        return {*left, *right, offset(*left, beta) - offset(*right, beta)};
    };

    // The tangent slope lies between the branch slopes at the inflection points.
    double lo = std::max(slope_at(ip->q_b), 0.0);
    double hi = slope_at(ip->q_a);
    // within rounding of p0 the concave window collapses and the slopes cross
    if (!(hi > lo)) return std::nullopt;
    // gap is increasing in beta (its derivative is q_right^g - q_left^g > 0)
    for (int it = 0; it < kOuterIterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
        const double gap = minima(mid).gap;
        if (gap == 0.0) {
            lo = hi = mid;
            break;
        }
        (gap < 0.0 ? lo : hi) = mid;
    }
    const double beta = 0.5 * (lo + hi);
    const BranchMinima m = minima(beta);
    if (!(std::abs(m.gap) <= 1e-9)) {
        std::ostringstream msg;
        msg << "double_tangent: tangency residual " << m.gap << " after bisection (p=" << c.p() << ", gamma=" << g
            << ", slope=" << beta << ")";
        throw ConvergenceError(msg.str());
    }
    DoubleTangent dt{};
    dt.q_lo = m.q_left;
    dt.q_hi = m.q_right;
    dt.slope = beta;
    dt.intercept = rate(m.q_left, c.p()) - beta * std::pow(m.q_left, g);
    dt.residual = std::abs(m.gap);
    return dt;
}

std::optional<std::pair<double, double>> d2_touch_points(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("d2_touch_points: p must lie in (0,1)");
    if (p >= p0(2.0)) return std::nullopt;
    const double L = logit(p);  // < -2 below p0(2)
    auto phi = [&](double x) { return logit(x) - (1.0 - 2.0 * x) * L; };
    // phi' = 1/(x(1-x)) + 2L vanishes where x(1-x) = -1/(2L); phi peaks there on (0, 1/2)
    const double x_peak = 0.5 * (1.0 - std::sqrt(1.0 + 2.0 / L));
    const auto lo = roots::bisect(phi, 1e-300, x_peak, kQTol);
    const auto hi = roots::bisect(phi, 1.0 - x_peak, kQMax, kQTol);
    if (!lo || !hi) return std::nullopt;
    return std::make_pair(*lo, *hi);
}

double minorant_value(const GammaCurve& c, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("minorant_value: x must lie in [0,1]");
    const double value = curve_value(c, x);
    const auto dt = double_tangent(c);
    if (!dt) return value;
    const double q = std::pow(x, 1.0 / c.gamma());
    if (q > dt->q_lo && q < dt->q_hi) return dt->line(x);
    return value;
}

bool on_minorant(const GammaCurve& c, double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("on_minorant: q must lie in [0,1]");
    const auto dt = double_tangent(c);
    if (!dt) return true;
    return !(q > dt->q_lo && q < dt->q_hi);
}

double d2_boundary_p(double r) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("d2_boundary_p: r must lie in (0,1)");
    if (std::abs(r - 0.5) < 1e-8) return p0(2.0);
    return 1.0 / (1.0 + std::pow(1.0 / r - 1.0, 1.0 / (1.0 - 2.0 * r)));
}

bool b_region_test(double p, double q, double gamma) {
    return !on_minorant(GammaCurve(p, gamma), q);
}

std::vector<BoundaryPoint> boundary_curve(double gamma, std::span<const double> r_grid) {
    std::vector<BoundaryPoint> out;
    out.reserve(r_grid.size());
    for (double r : r_grid) {
        if (!(r > 0.0 && r < 1.0)) throw DomainError("boundary_curve: grid values must lie in (0,1)");
    }
    if (gamma <= 1.0) {
        for (double r : r_grid) out.push_back({r, 0.0});
        return out;
    }
    const double p_top = p0(gamma);
    constexpr double p_bottom = 1e-6;
    for (double r : r_grid) {
        if (!b_region_test(p_bottom, r, gamma)) {
            out.push_back({r, 0.0});
            continue;
        }
        // membership holds below the critical p and fails above it
        double lo = p_bottom;
        double hi = p_top;
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            (b_region_test(mid, r, gamma) ? lo : hi) = mid;
        }
        out.push_back({r, 0.5 * (lo + hi)});
    }
    return out;
}

void write_boundary_csv(std::ostream& out, double gamma, std::span<const BoundaryPoint> points) {
    out << "r,p_critical,gamma\n";
    out << std::setprecision(12);
    for (const auto& pt : points) out << pt.r << ',' << pt.p_critical << ',' << gamma << '\n';
}

}  // namespace ldphase
