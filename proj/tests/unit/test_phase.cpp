#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ldphase/errors.hpp"
#include "ldphase/minorant.hpp"
#include "ldphase/phase.hpp"
#include "ldphase/rate_fn.hpp"

using namespace ldphase;

TEST_CASE("classification examples") {
    const auto sym = classify_upper_tail(2, 0.2, 0.4);
    CHECK(sym.verdict == Verdict::ReplicaSymmetric);
    CHECK(sym.rate == doctest::Approx(rate(0.4, 0.2)));
    CHECK_FALSE(sym.witness.has_value());

    const auto brk = classify_upper_tail(2, 0.05, 0.3);
    CHECK(brk.verdict == Verdict::SymmetryBreaking);
    REQUIRE(brk.witness.has_value());
    CHECK(brk.rate < rate(0.3, 0.05));

    CHECK(classify_upper_tail(2, 0.1, 0.25).verdict == Verdict::Boundary);
    CHECK(to_string(Verdict::Boundary) == "Boundary");
}

TEST_CASE("classification preconditions") {
    CHECK_THROWS_AS(classify_upper_tail(2, 0.3, 0.2), DomainError);
    CHECK_THROWS_AS(classify_upper_tail(1, 0.1, 0.2), PreconditionError);
    CHECK_THROWS_AS(classify_upper_tail(3, 0.05, 0.3, SmallGraph::complete(3)), PreconditionError);
    CHECK_THROWS_AS(classify_upper_tail(2, 0.05, 0.3, SmallGraph::path(3)), PreconditionError);
}

TEST_CASE("d = 2 verdicts follow the closed-form boundary") {
    int n = 0;
    for (int i = 1; i <= 20; ++i) {
        for (int j = 1; j <= 10; ++j) {
            const double r = 0.04 + 0.92 * i / 21.0;
            const double p = 0.14 * j / 11.0;
            if (p > r) continue;
            const double pc = d2_boundary_p(r);
            if (std::abs(p - pc) < 1e-6) continue;
            CAPTURE(p);
            CAPTURE(r);
            const Verdict v = minorant_verdict(2.0, p, r);
            CHECK(v == (p < pc ? Verdict::SymmetryBreaking : Verdict::ReplicaSymmetric));
            ++n;
        }
    }
    CHECK(n > 150);
}

TEST_CASE("break witness for K3") {
    const SmallGraph k3 = SmallGraph::complete(3);
    const double p = 0.05;
    const double r = 0.3;
    const BreakWitness w = build_break_witness(k3, p, r);
    CHECK(w.r1 < r);
    CHECK(r < w.r2);
    CHECK(w.s * w.r1 * w.r1 + (1 - w.s) * w.r2 * w.r2 == doctest::Approx(r * r).epsilon(1e-12));
    CHECK(w.epsilon > 0.0);
    // independent recomputation
    const double t = hom_density(k3, w.graphon);
    const double hp = rate_functional(w.graphon, p);
    CHECK(t > std::pow(r, 3) + 1e-12);
    CHECK(hp < rate(r, p) - 1e-12);
    CHECK(w.target_t == doctest::Approx(std::pow(r, 3)));
    CHECK(w.graphon.k() == 3);
    // first-order term v(H) eps^3 (r2^d - r^d) r^{e-d}
    const double first = 3 * std::pow(w.epsilon, 3) * (w.r2 * w.r2 - r * r) * std::pow(r, 1);
    CHECK(std::abs((t - std::pow(r, 3)) - first) <= 0.3 * first);
}

TEST_CASE("break witness rejects points off the region") {
    CHECK_THROWS_AS(build_break_witness(SmallGraph::complete(3), 0.2, 0.4), PreconditionError);
    CHECK_THROWS_AS(build_break_witness(SmallGraph::path(3), 0.05, 0.3), PreconditionError);
    const std::vector<double> big = {0.5};
    CHECK_THROWS_AS(build_break_witness(SmallGraph::complete(3), 0.05, 0.3, big), SearchExhaustedError);
}

TEST_CASE("default regular graphs") {
    for (int d = 2; d <= 9; ++d) {
        const SmallGraph g = default_regular_graph(d);
        CHECK(is_d_regular(g) == d);
    }
    CHECK(default_regular_graph(3).n() == 4);
}

TEST_CASE("witnesses for higher degree") {
    const auto cls = classify_upper_tail(4, 0.2, 0.6);
    REQUIRE(cls.verdict == Verdict::SymmetryBreaking);
    CHECK(cls.witness->t_value > cls.witness->target_t);
    const auto cls3 = classify_upper_tail(3, 0.1, 0.5, SmallGraph::cube());
    REQUIRE(cls3.verdict == Verdict::SymmetryBreaking);
    CHECK(hom_density(SmallGraph::cube(), cls3.witness->graphon) > std::pow(0.5, 12));
}

TEST_CASE("spectral certificate") {
    const auto cert = spectral_break_certificate(0.05, 0.3);
    CHECK(cert.verified);
    const auto& w = cert.witness;
    CHECK(w.functional == WitnessFunctional::OperatorNorm);
    CHECK(operator_norm(w.graphon) > 0.3);
    const double a = w.graphon.weight(0);
    const double b = w.graphon.weight(2);
    // action on I0
    CHECK(cert.t_u[1] == doctest::Approx((1 - a - b) * (0.09 + a * w.r1 * w.r1 + b * w.r2 * w.r2)).epsilon(1e-12));
    CHECK(cert.t_u[1] > 0.09);
    for (std::size_t i = 0; i < 3; ++i) CHECK(cert.t_u[i] > 0.3 * cert.u[i]);

    const auto sym = classify_spectral(0.2, 0.4);
    CHECK(sym.verdict == Verdict::ReplicaSymmetric);
    CHECK(sym.rate == doctest::Approx(rate(0.4, 0.2)));
    CHECK(classify_spectral(0.05, 0.3).verdict == Verdict::SymmetryBreaking);
}

TEST_CASE("lower tail") {
    CHECK(lower_tail_sidorenko_note(SmallGraph::cycle(4), 0.5, 0.3).verdict == Verdict::ReplicaSymmetric);
    CHECK(lower_tail_sidorenko_note(SmallGraph::cycle(6), 0.5, 0.3).rate == doctest::Approx(rate(0.3, 0.5)));
    CHECK(lower_tail_sidorenko_note(SmallGraph::path(4), 0.5, 0.3).verdict == Verdict::ReplicaSymmetric);
    CHECK(lower_tail_sidorenko_note(SmallGraph::complete_bipartite(2, 3), 0.5, 0.3).verdict == Verdict::ReplicaSymmetric);
    CHECK_THROWS_AS(lower_tail_sidorenko_note(SmallGraph::complete(3), 0.5, 0.3), UnsupportedError);
    CHECK_THROWS_AS(lower_tail_sidorenko_note(SmallGraph::cycle(4), 0.5, 0.6), DomainError);

    CHECK(lower_tail_nonbipartite_r0(0.5) == doctest::Approx(0.11002786443835955).epsilon(1e-12));
    const StepGraphon f = checkerboard_graphon(0.5);
    CHECK(hom_density(SmallGraph::complete(3), f) == 0.0);
    CHECK(rate_functional(f, 0.5) == doctest::Approx(rate(0.0, 0.5) / 2));
    const double r0 = lower_tail_nonbipartite_r0(0.3);
    CHECK(rate(r0, 0.3) == doctest::Approx(rate(0.0, 0.3) / 2).epsilon(1e-12));
    CHECK(rate(r0 * 0.5, 0.3) > rate_functional(checkerboard_graphon(0.3), 0.3));
}

TEST_CASE("witness report format") {
    const BreakWitness w = build_break_witness(SmallGraph::complete(3), 0.05, 0.3);
    std::ostringstream out;
    write_witness_report(out, w);
    std::istringstream in(out.str());
    const StepGraphon g = read_step_graphon(in);
    CHECK(g.k() == 3);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line == "epsilon,r1,r2,s,t_value,target_t,hp_value,target_hp");
    std::getline(in, line);
    CHECK(std::count(line.begin(), line.end(), ',') == 7);
}

TEST_CASE("breaking verdict near the boundary without a certifiable witness") {
    // r sits 1.8e-3 above the lower touch point; the chord gap is below double resolution for every eps
    const auto cls = classify_upper_tail(3, 0.18, 0.2205);
    CHECK(cls.verdict == Verdict::SymmetryBreaking);
    CHECK_FALSE(cls.witness.has_value());
    CHECK(cls.witness_note.find("no eps in the schedule works") != std::string::npos);
    CHECK(cls.rate == doctest::Approx(rate(0.2205, 0.18)));
    CHECK_THROWS_AS(build_break_witness(SmallGraph::complete(4), 0.18, 0.2205), SearchExhaustedError);
}
