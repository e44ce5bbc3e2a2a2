#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "ldphase/errors.hpp"
#include "ldphase/graphon.hpp"
#include "ldphase/graphs.hpp"
#include "ldphase/sampler.hpp"

using namespace ldphase;

TEST_CASE("construction validates edges") {
    CHECK_THROWS_AS(SmallGraph(3, {{0, 0}}), PreconditionError);
    CHECK_THROWS_AS(SmallGraph(3, {{0, 3}}), PreconditionError);
    CHECK_THROWS_AS(SmallGraph(3, {{0, 1}, {1, 0}}), PreconditionError);
    const SmallGraph looped(2, {{0, 0}, {0, 1}}, true);
    CHECK(looped.has_loops());
    CHECK(looped.adjacent(0, 0));
    CHECK(looped.degree(0) == 2);
}

TEST_CASE("regularity and bipartiteness") {
    CHECK(is_d_regular(SmallGraph::complete(3)) == 2);
    CHECK(is_d_regular(SmallGraph::petersen()) == 3);
    CHECK(is_d_regular(SmallGraph::cube()) == 3);
    CHECK_FALSE(is_d_regular(SmallGraph::path(4)).has_value());
    CHECK_FALSE(is_bipartite(SmallGraph::cycle(5)).has_value());
    const auto sides = is_bipartite(SmallGraph::cycle(4));
    REQUIRE(sides.has_value());
    CHECK(std::count(sides->begin(), sides->end(), 0) == 2);
    CHECK(is_tree(SmallGraph::path(5)));
    CHECK_FALSE(is_tree(SmallGraph::cycle(5)));
    CHECK(is_complete_bipartite(SmallGraph::cycle(4)));
    CHECK(is_complete_bipartite(SmallGraph::complete_bipartite(2, 3)));
    CHECK_FALSE(is_complete_bipartite(SmallGraph::cycle(6)));
    CHECK(is_d_regular(SmallGraph::circulant(8, {1, 2, 4})) == 5);
}

TEST_CASE("homomorphism counts") {
    CHECK(hom_count(SmallGraph::complete(2), SmallGraph::complete(5)) == 20);
    CHECK(hom_count(SmallGraph::complete(3), SmallGraph::complete(3)) == 6);
    CHECK(hom_density_graph(SmallGraph::complete(3), SmallGraph::complete(3)) == doctest::Approx(2.0 / 9.0));
    CHECK(hom_density_graph(SmallGraph::complete(3), SmallGraph::cycle(5)) == 0.0);
    CHECK(hom_density_graph(SmallGraph::complete(2), SmallGraph::complete(7)) == doctest::Approx(6.0 / 7.0));
    CHECK_THROWS_AS(hom_count(SmallGraph::complete(6), SmallGraph::complete(30)), SizeLimitError);
}

TEST_CASE("graph densities equal step-graphon densities") {
    const SmallGraph targets[] = {SmallGraph::petersen(), SmallGraph::cube(), SmallGraph::cycle(7),
                                  sample_gnp(9, 0.5, 17)};
    const SmallGraph patterns[] = {SmallGraph::complete(3), SmallGraph::cycle(4), SmallGraph::path(4),
                                   SmallGraph::complete_bipartite(2, 3)};
    for (const auto& g : targets) {
        const StepGraphon f = StepGraphon::from_graph(g);
        for (const auto& h : patterns) CHECK(hom_density_graph(h, g) == doctest::Approx(hom_density(h, f)).epsilon(1e-12));
    }
}

TEST_CASE("cycle densities by trace") {
    CHECK(cycle_density_trace(3, SmallGraph::complete(3)) == doctest::Approx(6.0 / 27.0));
    CHECK(cycle_density_trace(3, SmallGraph::cube()) == 0.0);
    const SmallGraph g = sample_gnp(8, 0.5, 99);
    for (int k = 3; k <= 6; ++k) {
        CHECK(cycle_density_trace(k, g) == doctest::Approx(hom_density_graph(SmallGraph::cycle(k), g)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(cycle_density_trace(2, g), DomainError);
}

TEST_CASE("spectral radius") {
    CHECK(spectral_radius(SmallGraph::complete(7)) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(spectral_radius(SmallGraph::cycle(9)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(spectral_radius(SmallGraph::petersen()) == doctest::Approx(3.0).epsilon(1e-12));
    // independent route: Jacobi rotations on the step graphon
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SmallGraph g = sample_gnp(20, 0.5, seed);
        const double lambda = spectral_radius(g);
        CHECK(lambda / g.n() == doctest::Approx(operator_norm(StepGraphon::from_graph(g))).epsilon(1e-9));
    }
}

TEST_CASE("Galvin-Tetali") {
    const StepGraphon identity = StepGraphon::uniform_blocks(2, {1.0, 0.0, 0.0, 1.0});
    const auto tight = galvin_tetali_check(SmallGraph::complete_bipartite(3, 3), identity);
    CHECK(tight.lhs == doctest::Approx(tight.rhs).epsilon(1e-12));
    const auto c6 = galvin_tetali_check(SmallGraph::cycle(6), StepGraphon::uniform_blocks(2, {0.9, 0.2, 0.2, 0.4}));
    CHECK(c6.holds);
    CHECK_THROWS_AS(galvin_tetali_check(SmallGraph::complete(3), identity), PreconditionError);
    CHECK_THROWS_AS(galvin_tetali_check(SmallGraph::path(3), identity), PreconditionError);
    const auto k3 = galvin_tetali_counterexample(SmallGraph::complete(3), identity);
    CHECK(k3.lhs == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(k3.rhs == doctest::Approx(0.21022410381342864).epsilon(1e-14));
    CHECK_FALSE(k3.holds);
}

TEST_CASE("edge-list text format") {
    std::istringstream in("4 3\n0 1\n1 2\n2 3\n");
    const SmallGraph g = read_edge_list(in);
    CHECK(g.n() == 4);
    CHECK(g.m() == 3);
    std::ostringstream out;
    write_edge_list(out, g);
    std::istringstream back(out.str());
    CHECK(read_edge_list(back).edges() == g.edges());

    std::istringstream loop("2 1\n0 0\n");
    CHECK_THROWS_AS(read_edge_list(loop), ParseError);
    std::istringstream loop_ok("2 1\n0 0\n");
    CHECK(read_edge_list(loop_ok, true).has_loops());
    std::istringstream bad("3 2\n0 1\n");
    CHECK_THROWS_AS(read_edge_list(bad), ParseError);
    std::istringstream range("3 1\n0 5\n");
    CHECK_THROWS_AS(read_edge_list(range), ParseError);
}

TEST_CASE("named graphs") {
    CHECK(named_graph("K3")->m() == 3);
    CHECK(named_graph("K_5")->m() == 10);
    CHECK(named_graph("C6")->n() == 6);
    CHECK(named_graph("K3,3")->m() == 9);
    CHECK(named_graph("K_{2,3}")->m() == 6);
    CHECK(named_graph("Q3")->m() == 12);
    CHECK(named_graph("petersen")->m() == 15);
    CHECK_FALSE(named_graph("nonsense").has_value());
}
