#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldphase/phase.hpp"

namespace ldphase {

/// k-uniform hypergraph; each hyperedge is stored sorted, duplicates rejected.
class Hypergraph {
public:
    Hypergraph(int k, int n, std::vector<std::vector<int>> edges);

    int k() const noexcept { return k_; }
    int n() const noexcept { return n_; }
    std::size_t m() const noexcept { return edges_.size(); }
    const std::vector<std::vector<int>>& edges() const noexcept { return edges_; }
    int degree(int v) const;
    int max_degree() const;
    /// Common degree when every vertex has the same degree.
    std::optional<int> regular_degree() const;
    /// Every two vertices share at most one hyperedge.
    bool is_linear() const;

private:
    int k_;
    int n_;
    std::vector<std::vector<int>> edges_;
    std::vector<int> degree_;
};

/// Hypergraph whose linearity is checked at construction.
class LinearHypergraph : public Hypergraph {
public:
    LinearHypergraph(int k, int n, std::vector<std::vector<int>> edges);
    explicit LinearHypergraph(Hypergraph h);
};

/// Fano plane: 7 points, 7 lines, 3-regular.
LinearHypergraph fano_plane();
/// Pasch configuration: 6 points, 4 lines, 2-regular. The lines are the
/// vertex stars of K4 acting on its edges.
LinearHypergraph pasch_configuration();
/// 3-uniform loose cycle with `len` edges {2i, 2i+1, 2i+2} on 2 len vertices.
/// Linear but not regular.
Hypergraph loose_cycle(int len);
/// 3-uniform tight cycle {i, i+1, i+2} on n >= 5 vertices. 3-regular, not linear.
Hypergraph tight_cycle(int n);

/// fano, pasch, loose-cycle-N, tight-cycle-N.
std::optional<Hypergraph> named_hypergraph(std::string_view name);

/// `k n m`, then m lines of k vertex indices.
Hypergraph read_hyperedge_list(std::istream& in);
Hypergraph load_hyperedge_list(const std::string& path);
void write_hyperedge_list(std::ostream& out, const Hypergraph& h);

/// Symmetric step k-kernel: block weights and a dense tensor over blocks.
class StepKernelK {
public:
    /// `values` is the row-major tensor of size blocks^k. It must be invariant
    /// under coordinate permutations within 1e-12 and lie in [0, 1].
    StepKernelK(int k, std::vector<double> weights, std::vector<double> values);

    /// Tensor filled from a function of the block tuple.
    static StepKernelK from_function(int k, std::vector<double> weights,
                                     const std::function<double(std::span<const std::size_t>)>& fn);
    static StepKernelK constant(int k, double c);

    int arity() const noexcept { return k_; }
    std::size_t blocks() const noexcept { return weights_.size(); }
    double weight(std::size_t i) const { return weights_[i]; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::span<const double> values() const noexcept { return values_; }
    double value(std::span<const std::size_t> idx) const;
    /// Row-major tensor index of a block tuple.
    std::size_t flat_index(std::span<const std::size_t> idx) const;

private:
    int k_;
    std::vector<double> weights_;
    std::vector<double> values_;
};

/// t(H, f) summed exactly over block assignments; SizeLimitError when
/// blocks^{v(H)} exceeds 1e8.
double hom_density_hyper(const Hypergraph& h, const StepKernelK& f);

/// Sum over block tuples of (product of weights) h_p(value).
double rate_functional_k(const StepKernelK& f, double p);

/// (sum over tuples of weight product * |value|^d)^{1/d}.
double lp_norm_k(const StepKernelK& f, int d);

struct HolderReport {
    double lhs;  ///< t(H, f)
    double rhs;  ///< ||f||_d^{e(H)}, d = max degree
    bool holds;  ///< lhs <= rhs + 1e-12
};

HolderReport hyper_holder_check(const Hypergraph& h, const StepKernelK& f);

/// Verdict only: the criterion is the graph one and depends on d alone.
Verdict classify_upper_tail_hyper(int d, int k, double p, double r);

struct HyperBreakWitness {
    StepKernelK kernel;
    double epsilon;
    double r1;
    double r2;
    double s;
    double t_value;
    double target_t;
    double hp_value;
    double target_hp;
};

/// Three-block k-kernel: r1 when exactly one coordinate is in I1 and the rest
/// in I0, r2 likewise for I2, r otherwise. H must be linear and d-regular.
HyperBreakWitness build_hyper_break_witness(const LinearHypergraph& h, double p, double r,
                                            std::span<const double> eps_schedule);
HyperBreakWitness build_hyper_break_witness(const LinearHypergraph& h, double p, double r);

/// Blocks line, weights line, then the flat tensor; then the key-value block
/// as in write_witness_report.
void write_hyper_witness_report(std::ostream& out, const HyperBreakWitness& w);

}  // namespace ldphase
