#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ldphase {

class StepGraphon;

struct Edge {
    int u;
    int v;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite undirected graph, simple unless constructed with loops allowed.
///
/// Loops exist only for target graphs of homomorphism counts (hom(G, H) with
/// H possibly looped). Edges are stored with u <= v, sorted, without duplicates.
class SmallGraph {
public:
    SmallGraph(int n, std::vector<Edge> edges, bool allow_loops = false);

    static SmallGraph empty(int n);
    static SmallGraph complete(int n);
    static SmallGraph cycle(int n);
    static SmallGraph path(int n);
    static SmallGraph complete_bipartite(int a, int b);
    static SmallGraph cube();
    static SmallGraph petersen();
    /// Circulant graph on n vertices joining i and i +- s for each offset s.
    static SmallGraph circulant(int n, const std::vector<int>& offsets);

    int n() const noexcept { return n_; }
    std::size_t m() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    bool allows_loops() const noexcept { return allow_loops_; }
    bool has_loops() const noexcept;
    bool adjacent(int u, int v) const;
    /// Number of edge endpoints at u; a loop counts once.
    int degree(int u) const;
    const std::vector<int>& neighbors(int u) const { return adj_.at(static_cast<std::size_t>(u)); }

private:
    int n_;
    bool allow_loops_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::uint8_t> matrix_;
};

/// Common degree d when every vertex has degree d.
std::optional<int> is_d_regular(const SmallGraph& g);

/// Side (0 or 1) of every vertex under a BFS two-colouring, or none.
std::optional<std::vector<int>> is_bipartite(const SmallGraph& g);

/// Connected and acyclic with at least one edge.
bool is_tree(const SmallGraph& g);

/// K_{a,b} with a, b >= 1 (vertex labels arbitrary).
bool is_complete_bipartite(const SmallGraph& g);

/// Number of maps V(H) -> V(G) carrying edges to edges. Throws SizeLimitError
/// when n(G)^{v(H)} exceeds 1e8.
std::uint64_t hom_count(const SmallGraph& h, const SmallGraph& g);

/// hom_count / n(G)^{v(H)}.
double hom_density_graph(const SmallGraph& h, const SmallGraph& g);

/// t(C_k, G) = tr(A^k) / n^k, k >= 3.
double cycle_density_trace(int k, const SmallGraph& g);

/// Largest adjacency eigenvalue (dense symmetric eigensolver), n <= 2000.
double spectral_radius(const SmallGraph& g);

struct GalvinTetaliReport {
    double lhs;   ///< t(G, f)
    double rhs;   ///< t(K_{d,d}, f)^{v(G)/(2d)}
    bool holds;   ///< lhs <= rhs + 1e-12
};

/// Galvin-Tetali comparison for a bipartite d-regular G. Throws
/// PreconditionError for any other G.
GalvinTetaliReport galvin_tetali_check(const SmallGraph& g, const StepGraphon& f);

/// The same comparison without the bipartite precondition (G must still be
/// d-regular), for exhibiting failures such as G = K3.
GalvinTetaliReport galvin_tetali_counterexample(const SmallGraph& g, const StepGraphon& f);

/// Edge-list text: `n m`, then m lines `u v` (0-indexed). Loops `u u` are
/// accepted only when allow_loops is set.
SmallGraph read_edge_list(std::istream& in, bool allow_loops = false);
SmallGraph load_edge_list(const std::string& path, bool allow_loops = false);
void write_edge_list(std::ostream& out, const SmallGraph& g);

/// Built-in graphs by name: K3, K_5, C6, P4, K2,3, K_{3,3}, Q3, petersen.
std::optional<SmallGraph> named_graph(std::string_view name);

}  // namespace ldphase
