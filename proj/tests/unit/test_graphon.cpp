#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "ldphase/errors.hpp"
#include "ldphase/graphon.hpp"
#include "ldphase/graphs.hpp"
#include "ldphase/rate_fn.hpp"
#include "ldphase/rng.hpp"
#include "ldphase/verify.hpp"

using namespace ldphase;

namespace {

const StepGraphon kIdentity = StepGraphon::uniform_blocks(2, {1.0, 0.0, 0.0, 1.0});

// brute force over all (S, T) pairs
double cut_norm_4k(const StepKernel& f) {
    const std::size_t k = f.k();
    double best = 0.0;
    for (std::uint32_t s = 0; s < (1u << k); ++s) {
        for (std::uint32_t t = 0; t < (1u << k); ++t) {
            double sum = 0.0;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    if ((s >> i & 1u) && (t >> j & 1u)) sum += f.weight(i) * f.weight(j) * f.value(i, j);
            best = std::max(best, std::abs(sum));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("validation and renormalization") {
    CHECK_THROWS_AS(StepGraphon({0.5, 0.4}, {0, 0, 0, 0}), PreconditionError);
    CHECK_THROWS_AS(StepGraphon({0.5, 0.5}, {0, 1, 0, 0}), PreconditionError);
    CHECK_THROWS_AS(StepGraphon({0.5, 0.5}, {0, 1.5, 1.5, 0}), PreconditionError);
    CHECK_THROWS_AS(StepGraphon({1.0, 0.0}, {0, 0, 0, 0}), PreconditionError);
    const StepGraphon f({0.5 + 1e-10, 0.5}, {0.1, 0.2, 0.2, 0.3});
    CHECK(f.weight(0) + f.weight(1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("rate functional") {
    CHECK(rate_functional(StepGraphon::constant(0.3), 0.2) == doctest::Approx(rate(0.3, 0.2)));
    CHECK(rate_functional(StepGraphon::constant(0.2), 0.2) == doctest::Approx(0.0).epsilon(1e-16));
    const double p = 0.37;
    const StepGraphon checker = StepGraphon::uniform_blocks(2, {0.0, p, p, 0.0});
    CHECK(rate_functional(checker, p) == doctest::Approx(rate(0.0, p) / 2).epsilon(1e-14));
}

TEST_CASE("lp norms") {
    CHECK(lp_norm(StepGraphon::constant(0.4), 3) == doctest::Approx(0.4));
    CHECK(lp_norm(kIdentity, 1) == doctest::Approx(0.5));
    CHECK(lp_norm(kIdentity, 2) == doctest::Approx(1.0 / std::sqrt(2.0)));
    Xoshiro256ss rng(4);
    for (int i = 0; i < 100; ++i) {
        const StepGraphon f = random_step_graphon(rng, 1 + rng.below(5));
        CHECK(lp_norm(f, 1) <= lp_norm(f, 2) + 1e-15);
        CHECK(lp_norm(f, 2) <= lp_norm(f, 3) + 1e-15);
    }
}

TEST_CASE("homomorphism densities") {
    CHECK(hom_density(SmallGraph::complete(4), StepGraphon::constant(0.3)) == doctest::Approx(std::pow(0.3, 6)));
    CHECK(hom_density(SmallGraph::complete(3), kIdentity) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(hom_density(SmallGraph::complete_bipartite(2, 2), kIdentity) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK_THROWS_AS(hom_density(SmallGraph::complete(10), StepGraphon::uniform_blocks(7, std::vector<double>(49, 0.5))),
                    SizeLimitError);
}

TEST_CASE("homomorphism density agrees with Monte Carlo") {
    Xoshiro256ss rng(21);
    const SmallGraph patterns[] = {SmallGraph::complete(3), SmallGraph::cycle(4), SmallGraph::path(4), SmallGraph::complete(4)};
    for (int inst = 0; inst < 20; ++inst) {
        const StepGraphon f = random_step_graphon(rng, 2 + rng.below(4));
        const SmallGraph& h = patterns[inst % 4];
        const double exact = hom_density(h, f);
        // block of a uniform point by inverse CDF of the weights
        auto block = [&](double x) {
            double acc = 0.0;
            for (std::size_t b = 0; b < f.k(); ++b) {
                acc += f.weight(b);
                if (x < acc) return b;
            }
            return f.k() - 1;
        };
        const int samples = 1000000;
        double sum = 0.0;
        double sum2 = 0.0;
        std::vector<std::size_t> phi(static_cast<std::size_t>(h.n()));
        for (int s = 0; s < samples; ++s) {
            for (auto& b : phi) b = block(rng.uniform());
            double prod = 1.0;
            for (const Edge& e : h.edges()) prod *= f.value(phi[static_cast<std::size_t>(e.u)], phi[static_cast<std::size_t>(e.v)]);
            sum += prod;
            sum2 += prod * prod;
        }
        const double mean = sum / samples;
        const double se = std::sqrt(std::max(sum2 / samples - mean * mean, 0.0) / samples);
        CHECK(std::abs(mean - exact) <= 4 * se + 1e-12);
    }
}

TEST_CASE("cut norm") {
    CHECK(cut_norm(StepGraphon::constant(0.7)) == doctest::Approx(0.7));
    CHECK(cut_distance_to_constant(kIdentity, 0.5) == doctest::Approx(0.125));
    CHECK(cut_distance_to_constant(StepGraphon::constant(0.3), 0.3) == doctest::Approx(0.0));
    Xoshiro256ss rng(8);
    for (int i = 0; i < 100; ++i) {
        const StepKernel g = random_signed_kernel(rng, 1 + rng.below(6));
        const double c = cut_norm(g);
        CHECK(c == doctest::Approx(cut_norm_4k(g)).epsilon(1e-12));
        CHECK(c <= lp_norm(g, 1) + 1e-15);
        const StepGraphon f = random_step_graphon(rng, 1 + rng.below(6));
        const double l1 = lp_norm(f, 1);
        const double cc = rng.uniform();
        CHECK(cut_distance_to_constant(f, l1) <= cut_distance_to_constant(f, cc) + std::abs(cc - l1) + 1e-12);
    }
    CHECK_THROWS_AS(cut_norm(StepKernel(std::vector<double>(13, 1.0 / 13), std::vector<double>(169, 0.0))),
                    SizeLimitError);
}

TEST_CASE("operator norm") {
    CHECK(operator_norm(StepGraphon::constant(0.6)) == doctest::Approx(0.6));
    CHECK(operator_norm(StepGraphon::uniform_blocks(2, {0, 1, 1, 0})) == doctest::Approx(0.5));
    // Jacobi eigenvalues against Eigen
    Xoshiro256ss rng(9);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 1 + rng.below(8);
        Eigen::MatrixXd m(n, n);
        std::vector<double> flat(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b) {
                const double v = rng.uniform(-1, 1);
                m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
                m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
                flat[a * n + b] = flat[b * n + a] = v;
            }
        const auto mine = symmetric_eigenvalues(flat, n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
        for (std::size_t j = 0; j < n; ++j)
            CHECK(mine[j] == doctest::Approx(es.eigenvalues()(static_cast<Eigen::Index>(j))).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("Hoelder equality on product kernels") {
    const std::vector<double> g = {0.9, 0.4, 0.2};
    std::vector<double> vals(9);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) vals[i * 3 + j] = g[i] * g[j];
    const StepGraphon f({0.2, 0.5, 0.3}, vals);
    for (const auto& [h, d] : {std::pair{SmallGraph::complete(3), 2}, {SmallGraph::cycle(5), 2}, {SmallGraph::complete(4), 3}}) {
        CHECK(hom_density(h, f) == doctest::Approx(std::pow(lp_norm(f, d), static_cast<double>(h.m()))).epsilon(1e-9));
    }
}

TEST_CASE("Sidorenko graphs on random graphons") {
    Xoshiro256ss rng(12);
    const SmallGraph hs[] = {SmallGraph::path(3), SmallGraph::path(5), SmallGraph::cycle(4), SmallGraph::cycle(6)};
    for (int i = 0; i < 200; ++i) {
        const StepGraphon f = random_step_graphon(rng, 1 + rng.below(5));
        for (const auto& h : hs)
            CHECK(hom_density(h, f) >= std::pow(lp_norm(f, 1), static_cast<double>(h.m())) - 1e-12);
    }
}

TEST_CASE("block action") {
    const StepGraphon f({0.25, 0.75}, {0.2, 0.6, 0.6, 0.4});
    const std::vector<double> u = {1.0, 2.0};
    const auto tu = block_action(f, u);
    CHECK(tu[0] == doctest::Approx(0.2 * 0.25 + 0.6 * 0.75 * 2));
    CHECK(tu[1] == doctest::Approx(0.6 * 0.25 + 0.4 * 0.75 * 2));
}

TEST_CASE("text format round trip") {
    const StepGraphon f({0.2, 0.3, 0.5}, {0.1, 0.2, 0.3, 0.2, 0.5, 0.6, 0.3, 0.6, 0.9});
    std::ostringstream out;
    write_step_graphon(out, f);
    std::istringstream in(out.str());
    const StepGraphon g = read_step_graphon(in);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(g.weight(i) == f.weight(i));
        for (std::size_t j = 0; j < 3; ++j) CHECK(g.value(i, j) == f.value(i, j));
    }
    std::istringstream truncated("2\n0.5 0.5\n0 1\n");
    CHECK_THROWS_AS(read_step_graphon(truncated), ParseError);
    std::istringstream asym("2\n0.5 0.5\n0 1\n0 0\n");
    CHECK_THROWS_AS(read_step_graphon(asym), PreconditionError);
}
