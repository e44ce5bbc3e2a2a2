#include "ldphase/graphs.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <regex>
#include <sstream>

#include "ldphase/errors.hpp"
#include "ldphase/graphon.hpp"

namespace ldphase {
namespace {

constexpr double kMaxAssignments = 1e8;
constexpr int kSpectralMaxVertices = 2000;

}  // namespace

SmallGraph::SmallGraph(int n, std::vector<Edge> edges, bool allow_loops)
    : n_(n), allow_loops_(allow_loops) {
    if (n < 0) throw PreconditionError("graph: negative vertex count");
    const auto un = static_cast<std::size_t>(n);
    for (Edge& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
            throw PreconditionError("graph: edge endpoint out of range");
        }
        if (e.u == e.v && !allow_loops) throw PreconditionError("graph: loop in a simple graph");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw PreconditionError("graph: duplicate edge");
    }
    edges_ = std::move(edges);
    adj_.assign(un, {});
    matrix_.assign(un * un, 0);
    for (const Edge& e : edges_) {
        const auto u = static_cast<std::size_t>(e.u);
        const auto v = static_cast<std::size_t>(e.v);
        matrix_[u * un + v] = matrix_[v * un + u] = 1;
        adj_[u].push_back(e.v);
        if (u != v) adj_[v].push_back(e.u);
    }
    for (auto& row : adj_) std::sort(row.begin(), row.end());
}

SmallGraph SmallGraph::empty(int n) { return SmallGraph(n, {}); }

SmallGraph SmallGraph::complete(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
    return SmallGraph(n, std::move(edges));
}

SmallGraph SmallGraph::cycle(int n) {
    if (n < 3) throw PreconditionError("cycle: need at least 3 vertices");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return SmallGraph(n, std::move(edges));
}

SmallGraph SmallGraph::path(int n) {
    if (n < 1) throw PreconditionError("path: need at least 1 vertex");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return SmallGraph(n, std::move(edges));
}

SmallGraph SmallGraph::complete_bipartite(int a, int b) {
    if (a < 1 || b < 1) throw PreconditionError("complete_bipartite: sides must be nonempty");
    std::vector<Edge> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.push_back({i, a + j});
    return SmallGraph(a + b, std::move(edges));
}

SmallGraph SmallGraph::cube() {
    std::vector<Edge> edges;
    for (int i = 0; i < 8; ++i)
        for (int bit = 1; bit < 8; bit <<= 1)
            if ((i & bit) == 0) edges.push_back({i, i | bit});
    return SmallGraph(8, std::move(edges));
}

SmallGraph SmallGraph::petersen() {
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
        edges.push_back({i, (i + 1) % 5});
        edges.push_back({i, i + 5});
        edges.push_back({5 + i, 5 + (i + 2) % 5});
    }
    return SmallGraph(10, std::move(edges));
}

SmallGraph SmallGraph::circulant(int n, const std::vector<int>& offsets) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int s : offsets) {
            if (s <= 0 || 2 * s > n) throw PreconditionError("circulant: offsets must lie in [1, n/2]");
            const int j = (i + s) % n;
            const Edge e{std::min(i, j), std::max(i, j)};
            if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
        }
    }
    return SmallGraph(n, std::move(edges));
}

bool SmallGraph::has_loops() const noexcept {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.u == e.v; });
}

bool SmallGraph::adjacent(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw PreconditionError("adjacent: vertex out of range");
    return matrix_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)] != 0;
}

int SmallGraph::degree(int u) const { return static_cast<int>(neighbors(u).size()); }

std::optional<int> is_d_regular(const SmallGraph& g) {
    if (g.n() == 0) return std::nullopt;
    const int d = g.degree(0);
    for (int v = 1; v < g.n(); ++v)
        if (g.degree(v) != d) return std::nullopt;
    return d;
}

std::optional<std::vector<int>> is_bipartite(const SmallGraph& g) {
    std::vector<int> side(static_cast<std::size_t>(g.n()), -1);
    for (int s = 0; s < g.n(); ++s) {
        if (side[static_cast<std::size_t>(s)] >= 0) continue;
        side[static_cast<std::size_t>(s)] = 0;
        std::queue<int> frontier;
        frontier.push(s);
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop();
            for (int v : g.neighbors(u)) {
                auto& sv = side[static_cast<std::size_t>(v)];
                if (sv < 0) {
                    sv = 1 - side[static_cast<std::size_t>(u)];
                    frontier.push(v);
                } else if (sv == side[static_cast<std::size_t>(u)]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

bool is_tree(const SmallGraph& g) {
    if (g.n() < 2 || g.m() != static_cast<std::size_t>(g.n() - 1) || g.has_loops()) return false;
    std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : g.neighbors(u)) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == g.n();
}

bool is_complete_bipartite(const SmallGraph& g) {
    const auto sides = is_bipartite(g);
    if (!sides || g.has_loops()) return false;
    const auto a = static_cast<std::size_t>(std::count(sides->begin(), sides->end(), 0));
    const std::size_t b = sides->size() - a;
    return a >= 1 && b >= 1 && g.m() == a * b;
}

std::uint64_t hom_count(const SmallGraph& h, const SmallGraph& g) {
    const int v = h.n();
    const int n = g.n();
    if (std::pow(static_cast<double>(n), v) > kMaxAssignments) {
        throw SizeLimitError("hom_count: n(G)^v(H) exceeds 1e8 maps");
    }
    if (v == 0) return 1;
    std::vector<std::vector<int>> earlier(static_cast<std::size_t>(v));
    for (const Edge& e : h.edges()) earlier[static_cast<std::size_t>(std::max(e.u, e.v))].push_back(std::min(e.u, e.v));

    std::vector<int> phi(static_cast<std::size_t>(v), 0);
    std::uint64_t count = 0;
    auto recurse = [&](auto&& self, int i) -> void {
        if (i == v) {
            ++count;
            return;
        }
        const auto ui = static_cast<std::size_t>(i);
        for (int x = 0; x < n; ++x) {
            phi[ui] = x;
            bool ok = true;
            for (int j : earlier[ui]) {
                if (!g.adjacent(x, phi[static_cast<std::size_t>(j)])) {
                    ok = false;
                    break;
                }
            }
            if (ok) self(self, i + 1);
        }
    };
    recurse(recurse, 0);
    return count;
}

double hom_density_graph(const SmallGraph& h, const SmallGraph& g) {
    return static_cast<double>(hom_count(h, g)) / std::pow(static_cast<double>(g.n()), h.n());
}

namespace {

Eigen::MatrixXd adjacency(const SmallGraph& g) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n(), g.n());
    for (const Edge& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = 1.0;
    return a;
}

}  // namespace

double cycle_density_trace(int k, const SmallGraph& g) {
    if (k < 3) throw DomainError("cycle_density_trace: k must be at least 3");
    if (g.n() == 0) return 0.0;
    const Eigen::MatrixXd a = adjacency(g);
    Eigen::MatrixXd power = a;
    for (int i = 1; i < k; ++i) power = power * a;
    return power.trace() / std::pow(static_cast<double>(g.n()), k);
}

double spectral_radius(const SmallGraph& g) {
    if (g.n() > kSpectralMaxVertices) throw SizeLimitError("spectral_radius: at most 2000 vertices");
    if (g.n() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency(g), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceError("spectral_radius: eigensolver failed");
    return solver.eigenvalues().maxCoeff();
}

GalvinTetaliReport galvin_tetali_counterexample(const SmallGraph& g, const StepGraphon& f) {
    const auto d = is_d_regular(g);
    if (!d || *d < 1) throw PreconditionError("Galvin-Tetali: G must be d-regular with d >= 1");
    const double lhs = hom_density(g, f);
    const double kdd = hom_density(SmallGraph::complete_bipartite(*d, *d), f);
    const double rhs = std::pow(kdd, static_cast<double>(g.n()) / (2.0 * *d));
    return {lhs, rhs, lhs <= rhs + 1e-12};
}

GalvinTetaliReport galvin_tetali_check(const SmallGraph& g, const StepGraphon& f) {
    if (!is_bipartite(g)) throw PreconditionError("Galvin-Tetali: G must be bipartite");
    return galvin_tetali_counterexample(g, f);
}

SmallGraph read_edge_list(std::istream& in, bool allow_loops) {
    long long n = 0;
    long long m = 0;
    if (!(in >> n >> m) || n < 0 || m < 0) throw ParseError("edge list: expected header `n m`");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u = 0;
        long long v = 0;
        if (!(in >> u >> v)) throw ParseError("edge list: expected " + std::to_string(m) + " edges");
        if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("edge list: endpoint out of range");
        if (u == v && !allow_loops) throw ParseError("edge list: loop not allowed");
        edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    }
    try {
        return SmallGraph(static_cast<int>(n), std::move(edges), allow_loops);
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("edge list: ") + e.what());
    }
}

SmallGraph load_edge_list(const std::string& path, bool allow_loops) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge list " + path);
    return read_edge_list(in, allow_loops);
}

void write_edge_list(std::ostream& out, const SmallGraph& g) {
    out << g.n() << ' ' << g.m() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::optional<SmallGraph> named_graph(std::string_view name) {
    const std::string s(name);
    std::smatch m;
    static const std::regex complete_re(R"(K_?\{?(\d+)\}?)");
    static const std::regex cycle_re(R"(C_?\{?(\d+)\}?)");
    static const std::regex path_re(R"(P_?\{?(\d+)\}?)");
    static const std::regex bip_re(R"(K_?\{?(\d+),(\d+)\}?)");
    auto num = [](const std::ssub_match& sm) { return std::stoi(sm.str()); };
    if (std::regex_match(s, m, bip_re)) return SmallGraph::complete_bipartite(num(m[1]), num(m[2]));
    if (std::regex_match(s, m, complete_re)) return SmallGraph::complete(num(m[1]));
    if (std::regex_match(s, m, cycle_re)) return SmallGraph::cycle(num(m[1]));
    if (std::regex_match(s, m, path_re)) return SmallGraph::path(num(m[1]));
    if (s == "Q3" || s == "cube") return SmallGraph::cube();
    if (s == "petersen" || s == "Petersen") return SmallGraph::petersen();
    return std::nullopt;
}

}  // namespace ldphase
