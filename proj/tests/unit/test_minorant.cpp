#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "ldphase/errors.hpp"
#include "ldphase/minorant.hpp"
#include "ldphase/rng.hpp"

using namespace ldphase;

namespace {

struct TangentCase {
    double p;
    double gamma;
    double q_lo;
    double q_hi;
    double slope;
};

// tests/oracles/oracle_values.py: Newton on the 2x2 tangency system at 50 digits
const TangentCase kTangents[] = {
    {0.05, 2.0, 0.076131232293896441, 0.92386876770610356, 2.9444389791664405},
    {0.1, 3.0, 0.10737561438389904, 0.98948865149225163, 2.2953193263533727},
    {0.02, 1.8, 0.030215298069183539, 0.93789395919312055, 3.8635223842339574},
    {0.3, 6.0, 0.30394718082928268, 0.99817781177649181, 1.2031202136844448},
};

}  // namespace

TEST_CASE("double tangent matches the high-precision oracle") {
    for (const auto& tc : kTangents) {
        CAPTURE(tc.p);
        CAPTURE(tc.gamma);
        const auto dt = double_tangent(GammaCurve(tc.p, tc.gamma));
        REQUIRE(dt.has_value());
        CHECK(dt->q_lo == doctest::Approx(tc.q_lo).epsilon(1e-9));
        CHECK(dt->q_hi == doctest::Approx(tc.q_hi).epsilon(1e-9));
        CHECK(dt->slope == doctest::Approx(tc.slope).epsilon(1e-10));
        CHECK(dt->residual <= 1e-9);
        // the line touches the curve at both points
        const GammaCurve c(tc.p, tc.gamma);
        CHECK(dt->line(std::pow(dt->q_lo, tc.gamma)) == doctest::Approx(rate(dt->q_lo, tc.p)).epsilon(1e-10));
        CHECK(dt->line(std::pow(dt->q_hi, tc.gamma)) == doctest::Approx(rate(dt->q_hi, tc.p)).epsilon(1e-10));
    }
}

TEST_CASE("gamma = 2 tangent: slope log((1-p)/p), symmetric touch points") {
    for (double p : {0.01, 0.05, 0.08, 0.11}) {
        const auto dt = double_tangent(GammaCurve(p, 2.0));
        REQUIRE(dt.has_value());
        CHECK(dt->slope == doctest::Approx(std::log((1 - p) / p)).epsilon(1e-10));
        CHECK(dt->q_lo + dt->q_hi == doctest::Approx(1.0).epsilon(1e-10));
        const auto tp = d2_touch_points(p);
        REQUIRE(tp.has_value());
        CHECK(tp->first == doctest::Approx(dt->q_lo).epsilon(1e-9));
        CHECK(tp->second == doctest::Approx(dt->q_hi).epsilon(1e-9));
    }
    CHECK_FALSE(d2_touch_points(0.2).has_value());
    CHECK_FALSE(double_tangent(GammaCurve(0.2, 2.0)).has_value());
}

TEST_CASE("closed-form gamma = 2 boundary") {
    CHECK(d2_boundary_p(0.4) == doctest::Approx(0.11636363636363636).epsilon(1e-14));
    CHECK(d2_boundary_p(0.3) == doctest::Approx(0.10733614353269291).epsilon(1e-14));
    CHECK(d2_boundary_p(0.25) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(d2_boundary_p(0.5) == doctest::Approx(p0(2.0)));
    CHECK(d2_boundary_p(0.5 + 1e-7) == doctest::Approx(p0(2.0)).epsilon(1e-6));
    // symmetric about 1/2
    CHECK(d2_boundary_p(0.3) == doctest::Approx(d2_boundary_p(0.7)).epsilon(1e-12));
}

TEST_CASE("minorant lies below the curve and is midpoint convex") {
    for (const auto& tc : kTangents) {
        const GammaCurve c(tc.p, tc.gamma);
        const int n = 2000;
        std::vector<double> m(n + 1);
        for (int i = 0; i <= n; ++i) {
            const double x = static_cast<double>(i) / n;
            m[static_cast<std::size_t>(i)] = minorant_value(c, x);
            CHECK(m[static_cast<std::size_t>(i)] <= curve_value(c, x) + 1e-12);
        }
        for (int i = 1; i < n; ++i) {
            const auto u = static_cast<std::size_t>(i);
            CHECK(m[u] <= 0.5 * (m[u - 1] + m[u + 1]) + 1e-10);
        }
    }
}

TEST_CASE("on_minorant and the B region") {
    const GammaCurve c(0.05, 2.0);
    CHECK(on_minorant(c, 0.05));
    CHECK(on_minorant(c, 0.07));
    CHECK_FALSE(on_minorant(c, 0.3));
    CHECK_FALSE(on_minorant(c, 0.9));
    CHECK(on_minorant(c, 0.95));
    CHECK(b_region_test(0.05, 0.3, 2.0));
    CHECK_FALSE(b_region_test(0.2, 0.4, 2.0));
    CHECK(on_minorant(GammaCurve(0.4, 3.0), 0.6));
}

TEST_CASE("B region membership is monotone in p") {
    Xoshiro256ss rng(3);
    for (int i = 0; i < 30; ++i) {
        const double g = rng.uniform(1.5, 5.0);
        const double r = rng.uniform(0.1, 0.95);
        bool seen_outside = false;
        for (int j = 1; j <= 40; ++j) {
            const double p = p0(g) * j / 41.0;
            if (p > r) break;
            const bool inside = b_region_test(p, r, g);
            if (seen_outside) CHECK_FALSE(inside);
            seen_outside = seen_outside || !inside;
        }
    }
}

TEST_CASE("boundary curve") {
    const std::vector<double> rs = {0.1, 0.25, 0.4, 0.6, 0.8};
    const auto pts = boundary_curve(2.0, rs);
    REQUIRE(pts.size() == rs.size());
    for (const auto& pt : pts) CHECK(pt.p_critical == doctest::Approx(d2_boundary_p(pt.r)).epsilon(1e-7));
    for (const auto& pt : boundary_curve(0.8, rs)) CHECK(pt.p_critical == 0.0);
    std::ostringstream os;
    write_boundary_csv(os, 2.0, pts);
    CHECK(os.str().rfind("r,p_critical,gamma\n", 0) == 0);
    CHECK_THROWS_AS(boundary_curve(2.0, std::vector<double>{1.5}), DomainError);
}
