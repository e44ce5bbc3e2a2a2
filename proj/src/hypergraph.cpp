#include "ldphase/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <regex>
#include <sstream>

#include "ldphase/errors.hpp"
#include "ldphase/minorant.hpp"
#include "ldphase/rate_fn.hpp"

namespace ldphase {
namespace {

constexpr double kMaxAssignments = 1e8;
constexpr std::size_t kMaxTensor = 1u << 20;
// relative, so that tiny targets such as r^{e(H)} for large H stay reachable
constexpr double kRelMargin = 1e-12;

// Advances a block tuple in row-major order; false after the last tuple.
bool next_tuple(std::vector<std::size_t>& idx, std::size_t blocks) {
    for (std::size_t i = idx.size(); i-- > 0;) {
        if (++idx[i] < blocks) return true;
        idx[i] = 0;
    }
    return false;
}

double weight_product(const StepKernelK& f, std::span<const std::size_t> idx) {
    double w = 1.0;
    for (std::size_t b : idx) w *= f.weight(b);
    return w;
}

}  // namespace

Hypergraph::Hypergraph(int k, int n, std::vector<std::vector<int>> edges) : k_(k), n_(n) {
    if (k < 2) throw PreconditionError("hypergraph: uniformity must be at least 2");
    if (n < 0) throw PreconditionError("hypergraph: negative vertex count");
    for (auto& e : edges) {
        if (static_cast<int>(e.size()) != k) throw PreconditionError("hypergraph: edge size differs from k");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw PreconditionError("hypergraph: repeated vertex in an edge");
        if (e.front() < 0 || e.back() >= n) throw PreconditionError("hypergraph: vertex out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw PreconditionError("hypergraph: duplicate edge");
    edges_ = std::move(edges);
    degree_.assign(static_cast<std::size_t>(n), 0);
    for (const auto& e : edges_)
        for (int v : e) ++degree_[static_cast<std::size_t>(v)];
}

int Hypergraph::degree(int v) const { return degree_.at(static_cast<std::size_t>(v)); }

int Hypergraph::max_degree() const { return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end()); }

std::optional<int> Hypergraph::regular_degree() const {
    if (degree_.empty()) return std::nullopt;
    if (std::all_of(degree_.begin(), degree_.end(), [&](int x) { return x == degree_.front(); })) return degree_.front();
    return std::nullopt;
}

bool Hypergraph::is_linear() const {
    const auto un = static_cast<std::size_t>(n_);
    std::vector<char> seen(un * un, 0);
    for (const auto& e : edges_) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                auto& cell = seen[static_cast<std::size_t>(e[i]) * un + static_cast<std::size_t>(e[j])];
                if (cell) return false;
                cell = 1;
            }
        }
    }
    return true;
}

LinearHypergraph::LinearHypergraph(int k, int n, std::vector<std::vector<int>> edges)
    : LinearHypergraph(Hypergraph(k, n, std::move(edges))) {}

LinearHypergraph::LinearHypergraph(Hypergraph h) : Hypergraph(std::move(h)) {
    if (!is_linear()) throw PreconditionError("hypergraph: two vertices share more than one edge");
}

LinearHypergraph fano_plane() {
    return LinearHypergraph(3, 7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

LinearHypergraph pasch_configuration() {
    // K4 edges 01,02,03,12,13,23 are points 0..5; each K4 vertex gives a line
    return LinearHypergraph(3, 6, {{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 4, 5}});
}

Hypergraph loose_cycle(int len) {
    if (len < 3) throw PreconditionError("loose_cycle: need at least 3 edges");
    const int n = 2 * len;
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < len; ++i) edges.push_back({2 * i, 2 * i + 1, (2 * i + 2) % n});
    return Hypergraph(3, n, std::move(edges));
}

Hypergraph tight_cycle(int n) {
    if (n < 5) throw PreconditionError("tight_cycle: need at least 5 vertices");
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, (i + 2) % n});
    return Hypergraph(3, n, std::move(edges));
}

std::optional<Hypergraph> named_hypergraph(std::string_view name) {
    const std::string s(name);
    if (s == "fano") return fano_plane();
    if (s == "pasch") return pasch_configuration();
    static const std::regex loose_re(R"(loose-cycle-(\d+))");
    static const std::regex tight_re(R"(tight-cycle-(\d+))");
    std::smatch m;
    if (std::regex_match(s, m, loose_re)) return loose_cycle(std::stoi(m[1].str()));
    if (std::regex_match(s, m, tight_re)) return tight_cycle(std::stoi(m[1].str()));
    return std::nullopt;
}

Hypergraph read_hyperedge_list(std::istream& in) {
    long long k = 0;
    long long n = 0;
    long long m = 0;
    if (!(in >> k >> n >> m) || k < 2 || n < 0 || m < 0) throw ParseError("hyperedge list: expected header `k n m`");
    std::vector<std::vector<int>> edges(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(k)));
    for (auto& e : edges) {
        for (int& v : e) {
            long long x = 0;
            if (!(in >> x)) throw ParseError("hyperedge list: expected " + std::to_string(m) + " edges");
            if (x < 0 || x >= n) throw ParseError("hyperedge list: vertex out of range");
            v = static_cast<int>(x);
        }
    }
    try {
        return Hypergraph(static_cast<int>(k), static_cast<int>(n), std::move(edges));
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("hyperedge list: ") + e.what());
    }
}

Hypergraph load_hyperedge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open hyperedge list " + path);
    return read_hyperedge_list(in);
}

void write_hyperedge_list(std::ostream& out, const Hypergraph& h) {
    out << h.k() << ' ' << h.n() << ' ' << h.m() << '\n';
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
}

StepKernelK::StepKernelK(int k, std::vector<double> weights, std::vector<double> values)
    : k_(k), weights_(std::move(weights)), values_(std::move(values)) {
    if (k < 2) throw PreconditionError("k-kernel: arity must be at least 2");
    const std::size_t b = weights_.size();
    if (b == 0) throw PreconditionError("k-kernel: need at least one block");
    if (std::pow(static_cast<double>(b), k) > static_cast<double>(kMaxTensor)) {
        throw SizeLimitError("k-kernel: tensor too large");
    }
    std::size_t size = 1;
    for (int i = 0; i < k; ++i) size *= b;
    if (values_.size() != size) throw PreconditionError("k-kernel: tensor size must be blocks^k");
    for (double w : weights_)
        if (!(w > 0.0) || !std::isfinite(w)) throw PreconditionError("k-kernel: weights must be positive");
    const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) throw PreconditionError("k-kernel: weights must sum to 1");
    for (double& w : weights_) w /= total;
    for (double v : values_)
        if (!(v >= 0.0 && v <= 1.0)) throw PreconditionError("k-kernel: values must lie in [0,1]");

    // symmetrize: every entry becomes the mean over its orbit, after checking it is constant
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    std::vector<double> sym(values_.size());
    do {
        std::vector<std::size_t> perm = idx;
        std::sort(perm.begin(), perm.end());
        double sum = 0.0;
        std::size_t count = 0;
        const double first = values_[flat_index(perm)];
        do {
            const double v = values_[flat_index(perm)];
            if (std::abs(v - first) > 1e-12) throw PreconditionError("k-kernel: tensor is not symmetric");
            sum += v;
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        sym[flat_index(idx)] = sum / static_cast<double>(count);
    } while (next_tuple(idx, b));
    values_ = std::move(sym);
}

StepKernelK StepKernelK::from_function(int k, std::vector<double> weights,
                                       const std::function<double(std::span<const std::size_t>)>& fn) {
    if (k < 2) throw PreconditionError("k-kernel: arity must be at least 2");
    const std::size_t b = weights.size();
    if (b == 0) throw PreconditionError("k-kernel: need at least one block");
    if (std::pow(static_cast<double>(b), k) > static_cast<double>(kMaxTensor)) throw SizeLimitError("k-kernel: tensor too large");
    std::vector<double> values;
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    do {
        values.push_back(fn(idx));
    } while (next_tuple(idx, b));
    return StepKernelK(k, std::move(weights), std::move(values));
}

StepKernelK StepKernelK::constant(int k, double c) {
    return StepKernelK(k, {1.0}, {c});
}

std::size_t StepKernelK::flat_index(std::span<const std::size_t> idx) const {
    if (idx.size() != static_cast<std::size_t>(k_)) throw PreconditionError("k-kernel: index arity mismatch");
    std::size_t flat = 0;
    for (std::size_t i : idx) {
        if (i >= weights_.size()) throw PreconditionError("k-kernel: block index out of range");
        flat = flat * weights_.size() + i;
    }
    return flat;
}

double StepKernelK::value(std::span<const std::size_t> idx) const { return values_[flat_index(idx)]; }

double hom_density_hyper(const Hypergraph& h, const StepKernelK& f) {
    if (h.k() != f.arity()) throw PreconditionError("hom_density_hyper: uniformity and arity differ");
    const int v = h.n();
    const std::size_t b = f.blocks();
    if (std::pow(static_cast<double>(b), v) > kMaxAssignments) {
        throw SizeLimitError("hom_density_hyper: blocks^v(H) exceeds 1e8 assignments");
    }
    if (v == 0) return 1.0;
    // edges are sorted, so each closes at its largest vertex
    std::vector<std::vector<const std::vector<int>*>> closing(static_cast<std::size_t>(v));
    for (const auto& e : h.edges()) closing[static_cast<std::size_t>(e.back())].push_back(&e);

    std::vector<std::size_t> phi(static_cast<std::size_t>(v), 0);
    std::vector<std::size_t> tuple(static_cast<std::size_t>(h.k()));
    double total = 0.0;
    auto recurse = [&](auto&& self, int i, double acc) -> void {
        if (i == v) {
            total += acc;
            return;
        }
        const auto ui = static_cast<std::size_t>(i);
        for (std::size_t blk = 0; blk < b; ++blk) {
            phi[ui] = blk;
            double term = acc * f.weight(blk);
            for (const auto* e : closing[ui]) {
                for (std::size_t j = 0; j < e->size(); ++j) tuple[j] = phi[static_cast<std::size_t>((*e)[j])];
                term *= f.value(tuple);
            }
            if (term == 0.0) continue;
            self(self, i + 1, term);
        }
    };
    recurse(recurse, 0, 1.0);
    return total;
}

double rate_functional_k(const StepKernelK& f, double p) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(f.arity()), 0);
    double total = 0.0;
    do {
        total += weight_product(f, idx) * rate(f.value(idx), p);
    } while (next_tuple(idx, f.blocks()));
    return total;
}

double lp_norm_k(const StepKernelK& f, int d) {
    if (d < 1) throw DomainError("lp_norm_k: d must be at least 1");
    std::vector<std::size_t> idx(static_cast<std::size_t>(f.arity()), 0);
    double total = 0.0;
    do {
        total += weight_product(f, idx) * std::pow(std::abs(f.value(idx)), d);
    } while (next_tuple(idx, f.blocks()));
    return std::pow(total, 1.0 / d);
}

HolderReport hyper_holder_check(const Hypergraph& h, const StepKernelK& f) {
    const int d = std::max(1, h.max_degree());
    const double lhs = hom_density_hyper(h, f);
    const double rhs = std::pow(lp_norm_k(f, d), static_cast<double>(h.m()));
    return {lhs, rhs, lhs <= rhs + 1e-12};
}

Verdict classify_upper_tail_hyper(int d, int k, double p, double r) {
    if (d < 2) throw PreconditionError("classify_upper_tail_hyper: d must be at least 2");
    if (k < 2) throw PreconditionError("classify_upper_tail_hyper: k must be at least 2");
    return minorant_verdict(d, p, r);
}

HyperBreakWitness build_hyper_break_witness(const LinearHypergraph& h, double p, double r,
                                            std::span<const double> eps_schedule) {
    if (!(p > 0.0 && p < 1.0) || !(r >= p && r < 1.0)) throw DomainError("upper tail needs 0 < p <= r < 1");
    const auto d = h.regular_degree();
    if (!d || *d < 2) throw PreconditionError("build_hyper_break_witness: H must be d-regular with d >= 2");
    if (minorant_verdict(*d, p, r) != Verdict::SymmetryBreaking) {
        std::ostringstream msg;
        msg << "(p, r) = (" << p << ", " << r << ") is not strictly inside the breaking region for d = " << *d;
        throw PreconditionError(msg.str());
    }
    const auto dt = double_tangent(GammaCurve(p, *d));
    const double r1 = dt->q_lo;
    const double r2 = dt->q_hi;
    const double r2d = std::pow(r2, *d);
    const double s = (r2d - std::pow(r, *d)) / (r2d - std::pow(r1, *d));
    const double target_t = std::pow(r, static_cast<double>(h.m()));
    const double target_hp = rate(r, p);

    // blocks: 0 = I1, 1 = I0, 2 = I2
    auto value = [&](std::span<const std::size_t> idx) {
        const auto in1 = std::count(idx.begin(), idx.end(), std::size_t{0});
        const auto in2 = std::count(idx.begin(), idx.end(), std::size_t{2});
        const auto in0 = static_cast<std::ptrdiff_t>(idx.size()) - in1 - in2;
        if (in1 == 1 && in0 + 1 == static_cast<std::ptrdiff_t>(idx.size())) return r1;
        if (in2 == 1 && in0 + 1 == static_cast<std::ptrdiff_t>(idx.size())) return r2;
        return r;
    };

    std::ostringstream diag;
    diag << std::setprecision(6);
    const std::size_t stride = std::max<std::size_t>(1, eps_schedule.size() / 40);  // keep the report short
    std::size_t idx = 0;
    for (double eps : eps_schedule) {
        const double a = s * eps * eps;
        const double b = (1.0 - s) * eps * eps + eps * eps * eps;
        StepKernelK f = StepKernelK::from_function(h.k(), {a, 1.0 - a - b, b}, value);
        const double t = hom_density_hyper(h, f);
        const double hp = rate_functional_k(f, p);
        if (t > target_t * (1.0 + kRelMargin) && hp < target_hp * (1.0 - kRelMargin)) {
            return {std::move(f), eps, r1, r2, s, t, target_t, hp, target_hp};
        }
        if (idx++ % stride == 0) diag << "\n  eps=" << eps << " t-defect=" << (t - target_t) << " hp-defect=" << (hp - target_hp);
    }
    throw SearchExhaustedError("build_hyper_break_witness: no eps in the schedule works" + diag.str());
}

HyperBreakWitness build_hyper_break_witness(const LinearHypergraph& h, double p, double r) {
    const auto eps = default_epsilon_schedule();
    return build_hyper_break_witness(h, p, r, eps);
}

void write_hyper_witness_report(std::ostream& out, const HyperBreakWitness& w) {
    const auto old = out.precision(17);
    out << w.kernel.arity() << ' ' << w.kernel.blocks() << '\n';
    for (std::size_t i = 0; i < w.kernel.blocks(); ++i) out << (i ? " " : "") << w.kernel.weight(i);
    out << '\n';
    const auto vals = w.kernel.values();
    for (std::size_t i = 0; i < vals.size(); ++i) out << (i ? " " : "") << vals[i];
    out << '\n';
    out << "epsilon,r1,r2,s,t_value,target_t,hp_value,target_hp\n";
    out << w.epsilon << ',' << w.r1 << ',' << w.r2 << ',' << w.s << ',' << w.t_value << ',' << w.target_t << ','
        << w.hp_value << ',' << w.target_hp << '\n';
    out.precision(old);
}

}  // namespace ldphase
