#include "ldphase/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ldphase/errors.hpp"
#include "ldphase/rate_fn.hpp"

namespace ldphase {
namespace {

constexpr std::int64_t kChecksumInterval = 10000;

// hom(H, G) for G given by adjacency bitmasks (n <= 32).
std::uint64_t hom_count_masks(const std::vector<std::vector<int>>& earlier, const std::vector<std::uint32_t>& adj,
                              int n) {
    const auto v = earlier.size();
    const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1u);
    std::vector<int> phi(v, 0);
    std::uint64_t count = 0;
    auto recurse = [&](auto&& self, std::size_t i) -> void {
        std::uint32_t cand = all;
        for (int j : earlier[i]) cand &= adj[static_cast<std::size_t>(phi[static_cast<std::size_t>(j)])];
        if (i + 1 == v) {
            count += static_cast<std::uint64_t>(std::popcount(cand));
            return;
        }
        while (cand) {
            const int x = std::countr_zero(cand);
            cand &= cand - 1;
            phi[i] = x;
            self(self, i + 1);
        }
    };
    if (v == 0) return 1;
    recurse(recurse, 0);
    return count;
}

std::vector<std::vector<int>> earlier_neighbours(const SmallGraph& h) {
    std::vector<std::vector<int>> earlier(static_cast<std::size_t>(h.n()));
    for (const Edge& e : h.edges()) earlier[static_cast<std::size_t>(std::max(e.u, e.v))].push_back(std::min(e.u, e.v));
    return earlier;
}

double ipow(double base, int e) {
    double out = 1.0;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

}  // namespace

SmallGraph sample_gnp(int n, double p, std::uint64_t seed) {
    if (n < 1) throw PreconditionError("sample_gnp: n must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("sample_gnp: p must lie in [0,1]");
    Xoshiro256ss rng(seed);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) edges.push_back({i, j});
    return SmallGraph(n, std::move(edges));
}

ConditionalReport exact_conditional_upper_tail(int n, double p, const SmallGraph& h, double r) {
    if (n < 1 || n > 7) throw SizeLimitError("exact_conditional_upper_tail: n must lie in 1..7");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("exact_conditional_upper_tail: p must lie in (0,1)");
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("exact_conditional_upper_tail: r must lie in [0,1]");
    const int pairs = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> pair_list;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pair_list.emplace_back(i, j);

    const double threshold = std::pow(r, static_cast<double>(h.m()));
    const double scale = ipow(static_cast<double>(n), h.n());
    const auto earlier = earlier_neighbours(h);
    std::vector<double> prob_by_count(static_cast<std::size_t>(pairs) + 1);
    for (int m = 0; m <= pairs; ++m) prob_by_count[static_cast<std::size_t>(m)] = ipow(p, m) * ipow(1.0 - p, pairs - m);

    std::vector<double> law(static_cast<std::size_t>(pairs) + 1, 0.0);
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n));
    const std::uint32_t graphs = 1u << pairs;
    for (std::uint32_t mask = 0; mask < graphs; ++mask) {
        std::fill(adj.begin(), adj.end(), 0u);
        for (int b = 0; b < pairs; ++b) {
            if (mask >> b & 1u) {
                const auto [i, j] = pair_list[static_cast<std::size_t>(b)];
                adj[static_cast<std::size_t>(i)] |= 1u << j;
                adj[static_cast<std::size_t>(j)] |= 1u << i;
            }
        }
        const double t = static_cast<double>(hom_count_masks(earlier, adj, n)) / scale;
        if (t >= threshold * (1.0 - 1e-12)) {
            const int m = std::popcount(mask);
            law[static_cast<std::size_t>(m)] += prob_by_count[static_cast<std::size_t>(m)];
        }
    }
    double total = 0.0;
    double mean = 0.0;
    for (int m = 0; m <= pairs; ++m) {
        total += law[static_cast<std::size_t>(m)];
        mean += m * law[static_cast<std::size_t>(m)];
    }
    if (total > 0.0) {
        for (double& x : law) x /= total;
        mean /= total;
    }
    const double denom = pairs > 0 ? pairs : 1;
    return {n, p, r, threshold, total, total > 0.0 ? mean / denom : 0.0, p, std::move(law)};
}

GlauberChain::GlauberChain(int n, HKind kind, int cycle_length, double alpha, double beta1, double beta2,
                           std::uint64_t seed)
    : n_(n),
      kind_(kind),
      k_(kind == HKind::Triangle ? 3 : cycle_length),
      alpha_(alpha),
      beta1_(beta1),
      beta2_(beta2),
      words_((static_cast<std::size_t>(n) + 63) / 64),
      rng_(seed) {
    if (n < 3) throw PreconditionError("Glauber chain: n must be at least 3");
    if (kind == HKind::Cycle && cycle_length < 3) throw UnsupportedError("Glauber chain: cycle length must be at least 3");
    if (!(alpha > 0.0)) throw PreconditionError("Glauber chain: alpha must be positive");
    if (!std::isfinite(beta1) || !std::isfinite(beta2)) throw PreconditionError("Glauber chain: betas must be finite");
    hom_scale_ = ipow(static_cast<double>(n), k_);
    rows_.assign(static_cast<std::size_t>(n) * words_, 0);
    const double p = logistic(beta1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng_.bernoulli(p)) set_edge(i, j, true);
    hom_ = recount();
}

bool GlauberChain::has_edge(int u, int v) const {
    const auto row = static_cast<std::size_t>(u) * words_;
    return (rows_[row + static_cast<std::size_t>(v) / 64] >> (v % 64) & 1u) != 0;
}

void GlauberChain::set_edge(int u, int v, bool present) {
    if (has_edge(u, v) == present) return;
    const auto ru = static_cast<std::size_t>(u) * words_;
    const auto rv = static_cast<std::size_t>(v) * words_;
    rows_[ru + static_cast<std::size_t>(v) / 64] ^= std::uint64_t{1} << (v % 64);
    rows_[rv + static_cast<std::size_t>(u) / 64] ^= std::uint64_t{1} << (u % 64);
    edges_ += present ? 1 : -1;
}

std::int64_t GlauberChain::hom_delta(int u, int v) const {
    if (kind_ == HKind::Triangle) {
        const auto ru = static_cast<std::size_t>(u) * words_;
        const auto rv = static_cast<std::size_t>(v) * words_;
        std::int64_t common = 0;
        for (std::size_t w = 0; w < words_; ++w) common += std::popcount(rows_[ru + w] & rows_[rv + w]);
        return 6 * common;
    }
    // A = adjacency without {u,v}; E = e_u e_v^T + e_v e_u^T.
    // tr((A+E)^k) - tr(A^k) = -k [z^k] log det(I2 - J sum_j z^{j+1} U^T A^j U).
    const int k = k_;
    const auto un = static_cast<std::size_t>(n_);
    auto multiply = [&](const std::vector<double>& x) {
        std::vector<double> y(un, 0.0);
        for (std::size_t i = 0; i < un; ++i) {
            double acc = 0.0;
            for (std::size_t w = 0; w < words_; ++w) {
                std::uint64_t bits = rows_[i * words_ + w];
                while (bits) {
                    const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                    bits &= bits - 1;
                    acc += x[j];
                }
            }
            y[i] = acc;
        }
        // drop the contribution of the pair itself
        const auto su = static_cast<std::size_t>(u);
        const auto sv = static_cast<std::size_t>(v);
        if (has_edge(u, v)) {
            y[su] -= x[sv];
            y[sv] -= x[su];
        }
        return y;
    };
    std::vector<double> s_uu(static_cast<std::size_t>(k) + 1, 0.0);
    std::vector<double> s_uv(static_cast<std::size_t>(k) + 1, 0.0);
    std::vector<double> s_vv(static_cast<std::size_t>(k) + 1, 0.0);
    std::vector<double> xu(un, 0.0);
    std::vector<double> xv(un, 0.0);
    xu[static_cast<std::size_t>(u)] = 1.0;
    xv[static_cast<std::size_t>(v)] = 1.0;
    for (int j = 0; j + 1 <= k; ++j) {
        const auto m = static_cast<std::size_t>(j) + 1;
        s_uu[m] = xu[static_cast<std::size_t>(u)];
        s_uv[m] = xu[static_cast<std::size_t>(v)];
        s_vv[m] = xv[static_cast<std::size_t>(v)];
        if (j + 1 < k) {
            xu = multiply(xu);
            xv = multiply(xv);
        }
    }
    // c(z) = (1 - S_uv)^2 - S_uu S_vv
    std::vector<double> one_minus(static_cast<std::size_t>(k) + 1, 0.0);
    one_minus[0] = 1.0;
    for (std::size_t m = 1; m <= static_cast<std::size_t>(k); ++m) one_minus[m] = -s_uv[m];
    std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
    for (std::size_t a = 0; a <= static_cast<std::size_t>(k); ++a) {
        for (std::size_t b = 0; a + b <= static_cast<std::size_t>(k); ++b) {
            c[a + b] += one_minus[a] * one_minus[b] - s_uu[a] * s_vv[b];
        }
    }
    // l = log c, l_m = c_m - (1/m) sum_{i<m} i l_i c_{m-i}
    std::vector<double> l(static_cast<std::size_t>(k) + 1, 0.0);
    for (std::size_t m = 1; m <= static_cast<std::size_t>(k); ++m) {
        double acc = 0.0;
        for (std::size_t i = 1; i < m; ++i) acc += static_cast<double>(i) * l[i] * c[m - i];
        l[m] = c[m] - acc / static_cast<double>(m);
    }
    return std::llround(-static_cast<double>(k) * l[static_cast<std::size_t>(k)]);
}

double GlauberChain::hamiltonian_of(std::int64_t edges, std::int64_t hom) const {
    const double nn = static_cast<double>(n_);
    const double pairs = nn * (nn - 1.0) / 2.0;
    const double t = static_cast<double>(hom) / hom_scale_;
    return pairs * (beta1_ * 2.0 * static_cast<double>(edges) / (nn * nn) + beta2_ * std::pow(t, alpha_));
}

double GlauberChain::hamiltonian() const { return hamiltonian_of(edges_, hom_); }

double GlauberChain::hamiltonian_with(int u, int v, bool present) const {
    const bool now = has_edge(u, v);
    const std::int64_t delta = hom_delta(u, v);
    const std::int64_t hom_without = now ? hom_ - delta : hom_;
    const std::int64_t edges_without = now ? edges_ - 1 : edges_;
    return present ? hamiltonian_of(edges_without + 1, hom_without + delta) : hamiltonian_of(edges_without, hom_without);
}

double GlauberChain::transition_probability(int u, int v) const {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) throw PreconditionError("transition_probability: bad pair");
    return logistic(hamiltonian_with(u, v, true) - hamiltonian_with(u, v, false));
}

void GlauberChain::step() {
    const int u = static_cast<int>(rng_.below(static_cast<std::uint64_t>(n_)));
    int v = static_cast<int>(rng_.below(static_cast<std::uint64_t>(n_ - 1)));
    if (v >= u) ++v;
    const bool now = has_edge(u, v);
    const std::int64_t delta = hom_delta(u, v);
    const std::int64_t hom_without = now ? hom_ - delta : hom_;
    const std::int64_t edges_without = now ? edges_ - 1 : edges_;
    const double dh = hamiltonian_of(edges_without + 1, hom_without + delta) - hamiltonian_of(edges_without, hom_without);
    const bool next = rng_.bernoulli(logistic(dh));
    if (next != now) {
        set_edge(u, v, next);
        hom_ = next ? hom_without + delta : hom_without;
    }
}

double GlauberChain::edge_density() const {
    const double nn = static_cast<double>(n_);
    return static_cast<double>(edges_) / (nn * (nn - 1.0) / 2.0);
}

double GlauberChain::hom_density() const { return static_cast<double>(hom_) / hom_scale_; }

std::uint64_t GlauberChain::state_code() const {
    if (n_ > 11) throw SizeLimitError("state_code: n must be at most 11");
    std::uint64_t code = 0;
    int bit = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j, ++bit)
            if (has_edge(i, j)) code |= std::uint64_t{1} << bit;
    return code;
}

SmallGraph GlauberChain::graph() const {
    std::vector<Edge> edges;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (has_edge(i, j)) edges.push_back({i, j});
    return SmallGraph(n_, std::move(edges));
}

std::int64_t GlauberChain::recount() const {
    const SmallGraph g = graph();
    if (kind_ == HKind::Triangle) return static_cast<std::int64_t>(hom_count(SmallGraph::complete(3), g));
    return std::llround(cycle_density_trace(k_, g) * hom_scale_);
}

McmcRun erg_glauber(McmcRun run) {
    if (run.steps < 0) throw PreconditionError("erg_glauber: steps must be non-negative");
    const std::int64_t n2 = static_cast<std::int64_t>(run.n) * run.n;
    if (run.burn_in < 0) run.burn_in = std::max<std::int64_t>(100000, 50 * n2);
    if (run.thinning <= 0) run.thinning = std::max<std::int64_t>(1, n2);
    GlauberChain chain(run.n, run.kind, run.cycle_length, run.alpha, run.beta1, run.beta2, run.seed);
    run.trajectory.clear();
    run.checksums = 0;
    const std::int64_t total = run.burn_in + run.steps;
    for (std::int64_t s = 1; s <= total; ++s) {
        chain.step();
        if (s % kChecksumInterval == 0) {
            const std::int64_t fresh = chain.recount();
            if (fresh != chain.hom()) {
                std::ostringstream msg;
                msg << "erg_glauber: incremental count " << chain.hom() << " differs from recount " << fresh
                    << " at step " << s;
                throw ConvergenceError(msg.str());
            }
            ++run.checksums;
        }
        if (s >= run.burn_in && (s - run.burn_in) % run.thinning == 0) {
            run.trajectory.push_back({s - run.burn_in, chain.edge_density(), chain.hom_density()});
        }
    }
    return run;
}

CutEstimate empirical_cut_distance_to_constant(const SmallGraph& g, double u, std::uint64_t seed) {
    const int n = g.n();
    if (n == 0) return {0.0, true};
    const auto un = static_cast<std::size_t>(n);
    const double norm = static_cast<double>(n) * static_cast<double>(n);
    std::vector<double> m(un * un);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[static_cast<std::size_t>(i) * un + static_cast<std::size_t>(j)] = (g.adjacent(i, j) ? 1.0 : 0.0) - u;

    if (n <= 20) {
        std::vector<double> col(un, 0.0);
        std::vector<char> in_a(un, 0);
        double best = 0.0;
        const std::uint64_t subsets = std::uint64_t{1} << n;
        for (std::uint64_t step = 1; step < subsets; ++step) {
            const auto i = static_cast<std::size_t>(std::countr_zero(step));
            const double sign = in_a[i] ? -1.0 : 1.0;
            in_a[i] = !in_a[i];
            for (std::size_t j = 0; j < un; ++j) col[j] += sign * m[i * un + j];
            double pos = 0.0;
            double neg = 0.0;
            for (double c : col) (c > 0.0 ? pos : neg) += c;
            best = std::max({best, pos, -neg});
        }
        return {best / norm, true};
    }

    // alternating best responses; each sign handled separately
    Xoshiro256ss rng(seed);
    double best = 0.0;
    std::vector<char> a(un);
    std::vector<char> b(un);
    for (int restart = 0; restart < 64; ++restart) {
        for (double sign : {1.0, -1.0}) {
            for (auto& x : a) x = rng.bernoulli(0.5) ? 1 : 0;
            double value = -1.0;
            for (int it = 0; it < 100; ++it) {
                double total = 0.0;
                for (std::size_t j = 0; j < un; ++j) {
                    double c = 0.0;
                    for (std::size_t i = 0; i < un; ++i)
                        if (a[i]) c += m[i * un + j];
                    b[j] = sign * c > 0.0;
                    if (b[j]) total += sign * c;
                }
                double total2 = 0.0;
                for (std::size_t i = 0; i < un; ++i) {
                    double c = 0.0;
                    for (std::size_t j = 0; j < un; ++j)
                        if (b[j]) c += m[i * un + j];
                    a[i] = sign * c > 0.0;
                    if (a[i]) total2 += sign * c;
                }
                const double next = std::max(total, total2);
                if (next <= value) break;
                value = next;
            }
            best = std::max(best, value);
        }
    }
    return {best / norm, false};
}

void write_trajectory(std::ostream& out, const McmcRun& run) {
    const auto old = out.precision(12);
    out << "step,edge_density,hom_density\n";
    for (const auto& row : run.trajectory) out << row.step << ',' << row.edge_density << ',' << row.hom_density << '\n';
    out.precision(old);
}

void write_run_metadata(std::ostream& out, const McmcRun& run) {
    const auto old = out.precision(17);
    out << "n=" << run.n << '\n'
        << "h_kind=" << (run.kind == HKind::Triangle ? "triangle" : "cycle") << '\n'
        << "cycle_length=" << (run.kind == HKind::Triangle ? 3 : run.cycle_length) << '\n'
        << "alpha=" << run.alpha << '\n'
        << "beta1=" << run.beta1 << '\n'
        << "beta2=" << run.beta2 << '\n'
        << "steps=" << run.steps << '\n'
        << "burn_in=" << run.burn_in << '\n'
        << "thinning=" << run.thinning << '\n'
        << "seed=" << run.seed << '\n'
        << "prng=xoshiro256** (splitmix64 seeding)\n"
        << "checksums=" << run.checksums << '\n';
    out.precision(old);
}

}  // namespace ldphase
