#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ldphase/graphs.hpp"
#include "ldphase/rng.hpp"

namespace ldphase {

/// G(n, p): pairs (i, j), i < j, in lexicographic order, each kept when a
/// xoshiro256** uniform falls below p.
SmallGraph sample_gnp(int n, double p, std::uint64_t seed);

struct ConditionalReport {
    int n;
    double p;
    double r;
    double threshold;             ///< r^{e(H)}
    double event_probability;     ///< P(t(H, G) >= threshold)
    double conditional_mean;      ///< E[edge density | event]
    double unconditional_mean;    ///< E[edge density] = p
    std::vector<double> edge_count_law;  ///< P(e(G) = m | event), m = 0..C(n,2)
};

/// Exact conditional edge-count law under G(n, p) given t(H, G) >= r^{e(H)},
/// by enumerating all labelled graphs. n <= 7.
ConditionalReport exact_conditional_upper_tail(int n, double p, const SmallGraph& h, double r);

enum class HKind { Triangle, Cycle };

struct TrajectoryRow {
    std::int64_t step;
    double edge_density;  ///< e / C(n,2)
    double hom_density;   ///< hom(H, G) / n^{v(H)}
};

struct McmcRun {
    int n = 0;
    HKind kind = HKind::Triangle;
    int cycle_length = 3;  ///< used when kind == Cycle
    double alpha = 1.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    std::int64_t steps = 0;     ///< flips recorded after burn-in
    std::int64_t burn_in = -1;  ///< negative: max(1e5, 50 n^2)
    std::uint64_t seed = 0;
    std::int64_t thinning = -1; ///< negative: n^2
    std::vector<TrajectoryRow> trajectory;
    std::int64_t checksums = 0; ///< incremental counts compared with a full recount
};

/// Single-edge heat-bath chain whose stationary law is proportional to
/// exp(C(n,2) (beta1 t(K2, G) + beta2 t(H, G)^alpha)), H a triangle or a cycle.
///
/// The initial state is G(n, logistic(beta1)). A flip of pair {u, v} sets the
/// edge with probability logistic(H(G + uv) - H(G - uv)). Triangle counts
/// update through common neighbourhoods; cycle counts through the 2x2
/// determinant identity for a rank-two update of the adjacency matrix.
class GlauberChain {
public:
    GlauberChain(int n, HKind kind, int cycle_length, double alpha, double beta1, double beta2, std::uint64_t seed);

    void step();
    /// Probability that pair {u, v} holds an edge after being resampled.
    double transition_probability(int u, int v) const;
    /// Hamiltonian C(n,2) (beta1 2e/n^2 + beta2 t^alpha) of the current state.
    double hamiltonian() const;
    /// Hamiltonian with pair {u, v} forced on or off.
    double hamiltonian_with(int u, int v, bool present) const;

    int n() const noexcept { return n_; }
    std::int64_t edges() const noexcept { return edges_; }
    /// hom(H, G) tracked incrementally.
    std::int64_t hom() const noexcept { return hom_; }
    double edge_density() const;
    double hom_density() const;
    bool has_edge(int u, int v) const;
    /// Bit (index of pair (i,j) in lexicographic order) per edge; n <= 11.
    std::uint64_t state_code() const;
    SmallGraph graph() const;
    /// hom(H, G) from scratch via the graph module.
    std::int64_t recount() const;

private:
    std::int64_t hom_delta(int u, int v) const;  // hom(G + uv) - hom(G - uv)
    double hamiltonian_of(std::int64_t edges, std::int64_t hom) const;
    void set_edge(int u, int v, bool present);

    int n_;
    HKind kind_;
    int k_;
    double alpha_;
    double beta1_;
    double beta2_;
    std::size_t words_;
    std::vector<std::uint64_t> rows_;
    std::int64_t edges_ = 0;
    std::int64_t hom_ = 0;
    double hom_scale_;  // n^{v(H)}
    Xoshiro256ss rng_;
};

/// Runs the chain and fills run.trajectory at the thinning interval. Every
/// 1e4 flips the tracked count is checked against a recount; a mismatch
/// throws ConvergenceError.
McmcRun erg_glauber(McmcRun run);

struct CutEstimate {
    double value;
    bool exact;
};

/// sup_{A,B} |e_G(A,B) - u |A||B|| / n^2 over vertex sets (ordered pairs,
/// no loops). Exact for n <= 20; otherwise a lower bound from alternating
/// best responses over random restarts.
CutEstimate empirical_cut_distance_to_constant(const SmallGraph& g, double u, std::uint64_t seed = 0);

/// `step,edge_density,hom_density`
void write_trajectory(std::ostream& out, const McmcRun& run);
/// key=value lines with every run parameter and the seed.
void write_run_metadata(std::ostream& out, const McmcRun& run);

}  // namespace ldphase
