#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "ldphase/erg.hpp"
#include "ldphase/errors.hpp"
#include "ldphase/rate_fn.hpp"

using namespace ldphase;

namespace {

double objective(double b1, double b2, double g, double u) { return b1 * u + b2 * std::pow(u, g) - entropy(u); }

}  // namespace

TEST_CASE("beta2 = 0 gives the logistic maximizer") {
    for (double b1 = -6.0; b1 <= 6.0; b1 += 0.5) {
        for (double g : {0.5, 1.0, 3.0}) {
            const auto sm = scalar_maximize(b1, 0.0, g);
            REQUIRE(sm.maximizers.size() == 1);
            CHECK(sm.maximizers[0] == doctest::Approx(logistic(b1)).epsilon(1e-10));
        }
    }
}

TEST_CASE("scalar maximizer beats a dense grid") {
    for (double g : {0.4, 0.8, 1.0, 1.8, 3.0, 6.0}) {
        for (double b1 : {-4.0, -1.0, 0.5}) {
            for (double b2 : {-3.0, -0.5, 0.7, 2.0, 5.0}) {
                const auto sm = scalar_maximize(b1, b2, g);
                double grid_best = -1e300;
                for (int i = 0; i <= 20000; ++i) grid_best = std::max(grid_best, objective(b1, b2, g, i / 20000.0));
                CHECK(sm.value >= grid_best - 1e-12);
                CHECK(sm.value == doctest::Approx(objective(b1, b2, g, sm.maximizers[0])).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("critical beta2 and the two maximizers") {
    const double b1 = -2.0;
    const auto crit = critical_beta2(b1, 3.0);
    REQUIRE(crit.has_value());
    CHECK(*crit == doctest::Approx(2.1169984190390746).epsilon(1e-10));
    const auto dt = critical_tangent(b1, 3.0);
    CHECK(dt->q_lo == doctest::Approx(0.13115955868432785).epsilon(1e-9));
    CHECK(dt->q_hi == doctest::Approx(0.98458170328494911).epsilon(1e-9));
    const auto sm = scalar_maximize(b1, *crit, 3.0);
    REQUIRE(sm.maximizers.size() == 2);
    CHECK(std::abs(sm.maximizers[0] - dt->q_lo) < 1e-8);
    CHECK(std::abs(sm.maximizers[1] - dt->q_hi) < 1e-8);
    CHECK(scalar_maximize(b1, *crit - 1e-6, 3.0).maximizers.size() == 1);
    CHECK(scalar_maximize(b1, *crit + 1e-6, 3.0).maximizers.size() == 1);

    CHECK_FALSE(critical_beta2(-0.5, 3.0).has_value());
    CHECK_FALSE(critical_beta2(-5.0, 1.0).has_value());
}

TEST_CASE("Gamma threshold identities") {
    CHECK(convexity_threshold_beta1(3.0) == doctest::Approx(-0.80685281944005469).epsilon(1e-14));
    CHECK(convexity_threshold_beta1(2.0) == doctest::Approx(-2.0));
    for (double g : {1.5, 2.0, 3.0, 4.5, 8.0}) CHECK(logistic(convexity_threshold_beta1(g)) == doctest::Approx(p0(g)).epsilon(1e-13));
}

TEST_CASE("branch selection changes once across beta2") {
    const double b1 = -2.5;
    const double g = 2.5;
    const auto dt = critical_tangent(b1, g);
    REQUIRE(dt.has_value());
    const double split = 0.5 * (dt->q_lo + dt->q_hi);
    int changes = 0;
    bool prev_low = true;
    for (int i = 0; i < 1000; ++i) {
        const double b2 = 0.5 + 4.0 * i / 999.0;
        const bool low = scalar_maximize(b1, b2, g).maximizers.front() < split;
        if (i > 0 && low != prev_low) ++changes;
        prev_low = low;
    }
    CHECK(changes == 1);
    CHECK_FALSE(prev_low);
}

TEST_CASE("classification") {
    const SmallGraph k3 = SmallGraph::complete(3);
    CHECK(classify(ErgModel(k3, 1.0, -1.0, 0.5)).kind == ErgKind::SymmetricUnique);
    CHECK(classify(ErgModel(k3, 0.6, -1.0, 2.0)).kind == ErgKind::SymmetricUnique);

    const auto crit = critical_beta2(-2.0, 3.0);
    const auto two = classify(ErgModel(k3, 1.0, -2.0, *crit));
    CHECK(two.kind == ErgKind::SymmetricTwoPhase);
    CHECK(two.u_star.size() == 2);

    const ErgModel m(k3, 0.6, -3.0, 2.5);
    const auto c = classify(m);
    REQUIRE(c.breaking_interval.has_value());
    CHECK(c.breaking_interval->first == doctest::Approx(1.9623994741422824).epsilon(1e-9));
    CHECK(c.breaking_interval->second == doctest::Approx(3.2847933013043664).epsilon(1e-9));
    CHECK(c.kind == ErgKind::Breaking);
    const double mid = 0.5 * (c.breaking_interval->first + c.breaking_interval->second);
    CHECK(classify(ErgModel(k3, 0.6, -3.0, mid)).kind == ErgKind::Breaking);
    CHECK(classify(ErgModel(k3, 0.6, -3.0, 5.0)).kind == ErgKind::Indeterminate);
    CHECK(classify(ErgModel(k3, 0.6, -3.0, -1.0)).kind == ErgKind::Indeterminate);
    CHECK(classify(ErgModel(k3, 1.0, -3.0, -1.0)).kind == ErgKind::SymmetricUnique);
}

TEST_CASE("breaking interval endpoints are curve slopes") {
    const double b1 = -3.5;
    const double g = 1.5;
    const auto c = classify(ErgModel(SmallGraph::complete(3), 0.5, b1, 3.0));
    REQUIRE(c.breaking_interval.has_value());
    const auto d2 = critical_tangent(b1, 2.0);
    const GammaCurve curve = GammaCurve::from_log_odds(b1, g);
    CHECK(c.breaking_interval->first == doctest::Approx(curve_d1(curve, std::pow(d2->q_lo, g))).epsilon(1e-10));
    CHECK(c.breaking_interval->second == doctest::Approx(curve_d1(curve, std::pow(d2->q_hi, g))).epsilon(1e-10));
    // u* inside the touch interval of the d-curve
    for (int i = 1; i < 20; ++i) {
        const double b2 = c.breaking_interval->first + (c.breaking_interval->second - c.breaking_interval->first) * i / 20.0;
        const auto sm = scalar_maximize(b1, b2, g);
        CHECK(sm.maximizers[0] > d2->q_lo);
        CHECK(sm.maximizers[0] < d2->q_hi);
    }
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(ErgModel(SmallGraph::complete(3), 0.0, -1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(ErgModel(SmallGraph::path(3), 1.0, -1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(ErgModel(SmallGraph::complete(3), 1.0, 60.0, 1.0), PreconditionError);
    const ErgModel m(SmallGraph::complete(4), 0.5, -1.0, 1.0);
    CHECK(m.gamma() == doctest::Approx(3.0));
    CHECK(m.degree() == 3);
}

TEST_CASE("trajectories") {
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(-4.0 + 10.0 * i / 400.0);
    const double b1 = -2.0;
    const auto traj = u_star_trajectory(b1, 3.0, grid);
    const double crit = *critical_beta2(b1, 3.0);
    double max_gap = 0.0;
    double jump_at = 0.0;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        const double gap = traj[i].u_star.front() - traj[i - 1].u_star.back();
        CHECK(gap >= -1e-12);
        if (gap > max_gap) {
            max_gap = gap;
            jump_at = traj[i].beta2;
        }
    }
    CHECK(max_gap > 0.5);
    CHECK(std::abs(jump_at - crit) <= 10.0 / 400.0 + 1e-12);

    // convex case: gaps shrink with the grid
    auto biggest = [](const std::vector<TrajectoryPoint>& t) {
        double m = 0.0;
        for (std::size_t i = 1; i < t.size(); ++i) m = std::max(m, t[i].u_star.front() - t[i - 1].u_star.front());
        return m;
    };
    std::vector<double> coarse;
    std::vector<double> fine;
    for (int i = 0; i <= 100; ++i) coarse.push_back(-4.0 + 10.0 * i / 100.0);
    for (int i = 0; i <= 1000; ++i) fine.push_back(-4.0 + 10.0 * i / 1000.0);
    const double gc = biggest(u_star_trajectory(0.0, 3.0, coarse));
    const double gf = biggest(u_star_trajectory(0.0, 3.0, fine));
    CHECK(gf < 0.2 * gc);
    CHECK(u_star_trajectory(0.0, 3.0, std::vector<double>{-200.0}).front().u_star[0] < 0.1);
    CHECK(u_star_trajectory(0.0, 3.0, std::vector<double>{200.0}).front().u_star[0] > 0.999);

    std::ostringstream out;
    write_trajectory_csv(out, traj);
    CHECK(out.str().rfind("beta2,u_star\n", 0) == 0);
}

TEST_CASE("phase plot data") {
    const std::vector<double> b1 = {-4.0, -3.0, -1.0};
    const std::vector<double> b2 = {1.0, 2.5, 4.0};
    const auto pts = phase_plot_data(SmallGraph::complete(3), 0.5, b1, b2);
    CHECK(pts.size() == 9);
    for (const auto& pt : pts) {
        if (pt.classification.kind == ErgKind::Breaking) CHECK(pt.beta1 < -2.0);
    }
    std::ostringstream out;
    write_phase_csv(out, pts);
    CHECK(out.str().rfind("beta1,beta2,kind,u_star,u_star2\n", 0) == 0);
}
