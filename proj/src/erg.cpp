#include "ldphase/erg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "ldphase/errors.hpp"
#include "ldphase/rate_fn.hpp"
#include "ldphase/roots.hpp"

namespace ldphase {
namespace {

constexpr double kTieTol = 1e-11;
constexpr double kGammaTol = 1e-9;
constexpr double kQMin = 1e-300;
constexpr double kQMax = 1.0 - 1e-15;

struct Segment {
    double lo;
    double hi;
};

// Stretches of (0,1) where the stationarity function increases.
std::vector<Segment> increasing_segments(const GammaCurve& c) {
    const double g = c.gamma();
    if (g > 1.0) {
        if (const auto ip = inflection_points(c)) return {{kQMin, ip->q_a}, {ip->q_b, kQMax}};
        return {{kQMin, kQMax}};
    }
    if (g < 1.0) {
        // the indicator increases from -inf, so there is one turning point
        const auto q_min = roots::bisect([&](double q) { return convexity_indicator_q(c, q); }, kQMin, kQMax, 1e-16);
        if (q_min) return {{*q_min, kQMax}};
    }
    return {{kQMin, kQMax}};
}

}  // namespace

ErgModel::ErgModel(SmallGraph h, double alpha, double beta1, double beta2)
    : h_(std::move(h)), alpha_(alpha), beta1_(beta1), beta2_(beta2) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw PreconditionError("ERG model: alpha must be positive");
    if (!std::isfinite(beta1) || !std::isfinite(beta2)) throw PreconditionError("ERG model: betas must be finite");
    const auto d = is_d_regular(h_);
    if (!d || *d < 2) throw PreconditionError("ERG model: H must be d-regular with d >= 2");
    d_ = *d;
    gamma_ = static_cast<double>(h_.m()) * alpha;
    p_ = logistic(beta1);
    if (!(p_ > 0.0 && p_ < 1.0) || std::abs(logit(p_) - beta1) > 1e-12 * std::max(1.0, std::abs(beta1))) {
        throw PreconditionError("ERG model: beta1 does not round-trip through p = logistic(beta1)");
    }
}

ScalarMaximum scalar_maximize(double beta1, double beta2, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("scalar_maximize: gamma must be positive");
    const GammaCurve c = GammaCurve::from_log_odds(beta1, gamma);
    auto objective = [&](double u) { return beta1 * u + beta2 * std::pow(u, gamma) - entropy(u); };

    std::vector<double> candidates = {0.0, 1.0};
    for (const Segment& seg : increasing_segments(c)) {
        const auto root = roots::bisect([&](double q) { return curve_slope_q(c, q) - beta2; }, seg.lo, seg.hi, 1e-17);
        if (root) candidates.push_back(*root);
    }
    std::vector<std::pair<double, double>> scored;
    for (double u : candidates) scored.emplace_back(objective(u), u);
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    ScalarMaximum out{{scored[0].second}, scored[0].first};
    for (std::size_t i = 1; i < scored.size(); ++i) {
        if (scored[0].first - scored[i].first > kTieTol) break;
        if (std::abs(scored[i].second - scored[0].second) > 1e-6) {
            out.maximizers.push_back(scored[i].second);
            break;
        }
    }
    std::sort(out.maximizers.begin(), out.maximizers.end());
    return out;
}

double convexity_threshold_beta1(double gamma) {
    if (!(gamma > 1.0)) throw DomainError("convexity_threshold_beta1: gamma must exceed 1");
    return std::log(gamma - 1.0) - gamma / (gamma - 1.0);
}

std::optional<DoubleTangent> critical_tangent(double beta1, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("critical_tangent: gamma must be positive");
    if (gamma <= 1.0) return std::nullopt;
    return double_tangent(GammaCurve::from_log_odds(beta1, gamma));
}

std::optional<double> critical_beta2(double beta1, double gamma) {
    const auto dt = critical_tangent(beta1, gamma);
    if (!dt) return std::nullopt;
    return dt->slope;
}

std::string_view to_string(ErgKind k) {
    switch (k) {
        case ErgKind::SymmetricUnique: return "SymmetricUnique";
        case ErgKind::SymmetricTwoPhase: return "SymmetricTwoPhase";
        case ErgKind::Breaking: return "Breaking";
        case ErgKind::Indeterminate: return "Indeterminate";
    }
    return "?";
}

ErgClassification classify(const ErgModel& model) {
    const double b1 = model.beta1();
    const double b2 = model.beta2();
    const double g = model.gamma();
    const auto d = static_cast<double>(model.degree());
    const ScalarMaximum sm = scalar_maximize(b1, b2, g);

    if (g >= d) {
        const auto dt = critical_tangent(b1, g);
        if (dt && std::abs(b2 - dt->slope) <= kGammaTol) {
            return {ErgKind::SymmetricTwoPhase, {dt->q_lo, dt->q_hi}, sm.value, std::nullopt};
        }
        return {ErgKind::SymmetricUnique, {sm.maximizers.front()}, sm.value, std::nullopt};
    }
    if (b2 <= 0.0) return {ErgKind::Indeterminate, sm.maximizers, sm.value, std::nullopt};
    if (b1 >= convexity_threshold_beta1(d)) return {ErgKind::SymmetricUnique, {sm.maximizers.front()}, sm.value, std::nullopt};

    const auto dt = critical_tangent(b1, d);
    if (!dt) return {ErgKind::SymmetricUnique, {sm.maximizers.front()}, sm.value, std::nullopt};
    const GammaCurve cg = GammaCurve::from_log_odds(b1, g);
    const double lo = curve_slope_q(cg, dt->q_lo);
    const double hi = curve_slope_q(cg, dt->q_hi);
    const ErgKind kind = (b2 > lo && b2 < hi) ? ErgKind::Breaking : ErgKind::Indeterminate;
    return {kind, sm.maximizers, sm.value, std::make_pair(lo, hi)};
}

std::vector<TrajectoryPoint> u_star_trajectory(double beta1, double gamma, std::span<const double> beta2_grid) {
    if (!std::is_sorted(beta2_grid.begin(), beta2_grid.end())) throw PreconditionError("beta2 grid must be sorted");
    std::vector<TrajectoryPoint> out;
    out.reserve(beta2_grid.size());
    for (double b2 : beta2_grid) out.push_back({b2, scalar_maximize(beta1, b2, gamma).maximizers});
    return out;
}

std::vector<PhasePoint> phase_plot_data(const SmallGraph& h, double alpha, std::span<const double> beta1_grid,
                                        std::span<const double> beta2_grid) {
    if (!std::is_sorted(beta1_grid.begin(), beta1_grid.end()) || !std::is_sorted(beta2_grid.begin(), beta2_grid.end())) {
        throw PreconditionError("phase grids must be sorted");
    }
    std::vector<PhasePoint> out;
    out.reserve(beta1_grid.size() * beta2_grid.size());
    for (double b1 : beta1_grid)
        for (double b2 : beta2_grid) out.push_back({b1, b2, classify(ErgModel(h, alpha, b1, b2))});
    return out;
}

void write_phase_csv(std::ostream& out, std::span<const PhasePoint> points) {
    const auto old = out.precision(12);
    out << "beta1,beta2,kind,u_star,u_star2\n";
    for (const auto& pt : points) {
        const auto& u = pt.classification.u_star;
        out << pt.beta1 << ',' << pt.beta2 << ',' << to_string(pt.classification.kind) << ',' << u.front() << ',';
        if (u.size() > 1) out << u[1];
        out << '\n';
    }
    out.precision(old);
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> points) {
    const auto old = out.precision(12);
    out << "beta2,u_star\n";
    for (const auto& pt : points)
        for (double u : pt.u_star) out << pt.beta2 << ',' << u << '\n';
    out.precision(old);
}

}  // namespace ldphase
