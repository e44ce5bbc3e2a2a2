#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ldphase/graphs.hpp"
#include "ldphase/minorant.hpp"

namespace ldphase {

/// Two-term exponential random graph model with weight
/// exp(C(n,2) (beta1 t(K2, G) + beta2 t(H, G)^alpha)).
class ErgModel {
public:
    /// Throws PreconditionError unless alpha > 0, H is d-regular with d >= 2,
    /// and beta1 round-trips through p = logistic(beta1) within 1e-12.
    ErgModel(SmallGraph h, double alpha, double beta1, double beta2);

    const SmallGraph& graph() const noexcept { return h_; }
    double alpha() const noexcept { return alpha_; }
    double beta1() const noexcept { return beta1_; }
    double beta2() const noexcept { return beta2_; }
    double gamma() const noexcept { return gamma_; }
    int degree() const noexcept { return d_; }
    double p() const noexcept { return p_; }

private:
    SmallGraph h_;
    double alpha_;
    double beta1_;
    double beta2_;
    double gamma_;
    int d_;
    double p_;
};

struct ScalarMaximum {
    std::vector<double> maximizers;  ///< one, or two when the values tie within 1e-11
    double value;
};

/// Global maximizers of beta1 u + beta2 u^gamma - h(u) on [0, 1].
///
/// Stationary points are roots of u^{1-gamma} (logit u - beta1) / gamma = beta2
/// on the increasing stretches of the left side; the endpoints are also
/// compared.
ScalarMaximum scalar_maximize(double beta1, double beta2, double gamma);

/// beta1 value below which the gamma-curve loses convexity:
/// log(gamma - 1) - gamma / (gamma - 1).
double convexity_threshold_beta1(double gamma);

/// Double tangent of the gamma-curve with log-odds beta1; none when convex.
std::optional<DoubleTangent> critical_tangent(double beta1, double gamma);

/// Slope of that tangent: the beta2 on the discontinuity curve.
std::optional<double> critical_beta2(double beta1, double gamma);

enum class ErgKind { SymmetricUnique, SymmetricTwoPhase, Breaking, Indeterminate };

std::string_view to_string(ErgKind k);

struct ErgClassification {
    ErgKind kind;
    std::vector<double> u_star;  ///< scalar maximizer(s); two for SymmetricTwoPhase
    double psi;                  ///< maximum of the scalar problem
    std::optional<std::pair<double, double>> breaking_interval;  ///< set in the low-beta1, gamma < d case
};

ErgClassification classify(const ErgModel& model);

struct TrajectoryPoint {
    double beta2;
    std::vector<double> u_star;
};

/// Scalar maximizers along a sorted beta2 grid.
std::vector<TrajectoryPoint> u_star_trajectory(double beta1, double gamma, std::span<const double> beta2_grid);

struct PhasePoint {
    double beta1;
    double beta2;
    ErgClassification classification;
};

/// classify() over the product grid, beta1-major.
std::vector<PhasePoint> phase_plot_data(const SmallGraph& h, double alpha, std::span<const double> beta1_grid,
                                        std::span<const double> beta2_grid);

/// `beta1,beta2,kind,u_star[,u_star2]`
void write_phase_csv(std::ostream& out, std::span<const PhasePoint> points);
/// `beta2,u_star`; a tie contributes one row per maximizer.
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> points);

}  // namespace ldphase
