#include "ldphase/graphon.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ldphase/errors.hpp"
#include "ldphase/graphs.hpp"
#include "ldphase/rate_fn.hpp"

namespace ldphase {
namespace {

constexpr double kWeightRenormTol = 1e-9;
constexpr double kSymmetryTol = 1e-12;
constexpr double kMaxAssignments = 1e8;
constexpr std::size_t kCutNormMaxBlocks = 12;

}  // namespace

StepKernel::StepKernel(std::vector<double> weights, std::vector<double> values)
    : weights_(std::move(weights)), values_(std::move(values)) {
    const std::size_t k = weights_.size();
    if (k == 0) throw PreconditionError("step kernel needs at least one block");
    if (values_.size() != k * k) throw PreconditionError("step kernel value matrix must be k x k");
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) throw PreconditionError("block weights must be positive and finite");
    }
    const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    if (std::abs(total - 1.0) > kWeightRenormTol) {
        std::ostringstream msg;
        msg << "block weights sum to " << std::setprecision(17) << total << ", not 1";
        throw PreconditionError(msg.str());
    }
    for (double& w : weights_) w /= total;
    for (double v : values_) {
        if (!std::isfinite(v)) throw PreconditionError("kernel values must be finite");
    }
}

bool StepKernel::is_symmetric(double tol) const {
    for (std::size_t i = 0; i < k(); ++i)
        for (std::size_t j = i + 1; j < k(); ++j)
            if (std::abs(value(i, j) - value(j, i)) > tol) return false;
    return true;
}

StepGraphon::StepGraphon(std::vector<double> weights, std::vector<double> values)
    : StepKernel(std::move(weights), std::move(values)) {
    if (!is_symmetric(kSymmetryTol)) throw PreconditionError("graphon value matrix must be symmetric");
    const std::size_t n = k();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (values_[i * n + j] + values_[j * n + i]);
            values_[i * n + j] = values_[j * n + i] = avg;
        }
    }
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) throw PreconditionError("graphon values must lie in [0,1]");
    }
}

StepGraphon StepGraphon::constant(double c) { return StepGraphon({1.0}, {c}); }

StepGraphon StepGraphon::uniform_blocks(std::size_t k, std::vector<double> values) {
    if (k == 0) throw PreconditionError("uniform_blocks: k must be positive");
    return StepGraphon(std::vector<double>(k, 1.0 / static_cast<double>(k)), std::move(values));
}

StepGraphon StepGraphon::from_graph(const SmallGraph& g) {
    const auto n = static_cast<std::size_t>(g.n());
    std::vector<double> values(n * n, 0.0);
    for (const Edge& e : g.edges()) {
        values[static_cast<std::size_t>(e.u) * n + static_cast<std::size_t>(e.v)] = 1.0;
        values[static_cast<std::size_t>(e.v) * n + static_cast<std::size_t>(e.u)] = 1.0;
    }
    return uniform_blocks(n, std::move(values));
}

double rate_functional(const StepGraphon& f, double p) {
    double total = 0.0;
    for (std::size_t i = 0; i < f.k(); ++i)
        for (std::size_t j = 0; j < f.k(); ++j) total += f.weight(i) * f.weight(j) * rate(f.value(i, j), p);
    return total;
}

double lp_norm(const StepKernel& f, int d) {
    if (d < 1) throw DomainError("lp_norm: d must be at least 1");
    double total = 0.0;
    for (std::size_t i = 0; i < f.k(); ++i)
        for (std::size_t j = 0; j < f.k(); ++j)
            total += f.weight(i) * f.weight(j) * std::pow(std::abs(f.value(i, j)), d);
    return std::pow(total, 1.0 / d);
}

double hom_density(const SmallGraph& h, const StepKernel& f) {
    const int v = h.n();
    const std::size_t k = f.k();
    if (std::pow(static_cast<double>(k), v) > kMaxAssignments) {
        throw SizeLimitError("hom_density: k^v(H) exceeds 1e8 block assignments");
    }
    if (v == 0) return 1.0;
    // earlier[i]: neighbours j < i, plus i itself for a loop
    std::vector<std::vector<int>> earlier(static_cast<std::size_t>(v));
    for (const Edge& e : h.edges()) earlier[static_cast<std::size_t>(std::max(e.u, e.v))].push_back(std::min(e.u, e.v));

    std::vector<std::size_t> phi(static_cast<std::size_t>(v), 0);
    double total = 0.0;
    auto recurse = [&](auto&& self, int i, double acc) -> void {
        if (i == v) {
            total += acc;
            return;
        }
        const auto ui = static_cast<std::size_t>(i);
        for (std::size_t b = 0; b < k; ++b) {
            phi[ui] = b;
            double term = acc * f.weight(b);
            for (int j : earlier[ui]) term *= f.value(b, phi[static_cast<std::size_t>(j)]);
            if (term == 0.0) continue;
            self(self, i + 1, term);
        }
    };
    recurse(recurse, 0, 1.0);
    return total;
}

double cut_norm_unbounded(const StepKernel& f) {
    const std::size_t k = f.k();
    std::vector<double> col(k, 0.0);  // col[j] = sum_{i in S} w_i g_ij
    std::vector<char> in_s(k, 0);
    double best = 0.0;
    const std::uint64_t subsets = std::uint64_t{1} << k;
    for (std::uint64_t step = 1; step < subsets; ++step) {
        // Gray code: flip the lowest set bit of step
        const auto i = static_cast<std::size_t>(std::countr_zero(step));
        const double sign = in_s[i] ? -1.0 : 1.0;
        in_s[i] = !in_s[i];
        for (std::size_t j = 0; j < k; ++j) col[j] += sign * f.weight(i) * f.value(i, j);
        double pos = 0.0;
        double neg = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double c = f.weight(j) * col[j];
            (c > 0.0 ? pos : neg) += c;
        }
        best = std::max({best, pos, -neg});
    }
    return best;
}

double cut_norm(const StepKernel& f) {
    if (f.k() > kCutNormMaxBlocks) throw SizeLimitError("cut_norm: at most 12 blocks");
    return cut_norm_unbounded(f);
}

StepKernel shifted(const StepKernel& f, double c) {
    std::vector<double> values(f.values().begin(), f.values().end());
    for (double& v : values) v -= c;
    return StepKernel(std::vector<double>(f.weights().begin(), f.weights().end()), std::move(values));
}

double cut_distance_to_constant(const StepGraphon& f, double c) { return cut_norm(shifted(f, c)); }

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    if (a.size() != n * n) throw PreconditionError("symmetric_eigenvalues: matrix must be n x n");
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    double scale = 0.0;
    for (double x : a) scale += x * x;
    scale = std::sqrt(scale);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (std::sqrt(2.0 * off) <= 1e-14 * scale || off == 0.0) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
                const double c = 1.0 / std::hypot(t, 1.0);
                const double s = t * c;
                for (std::size_t r = 0; r < n; ++r) {
                    const double arp = at(r, p);
                    const double arq = at(r, q);
                    at(r, p) = c * arp - s * arq;
                    at(r, q) = s * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double apr = at(p, r);
                    const double aqr = at(q, r);
                    at(p, r) = c * apr - s * aqr;
                    at(q, r) = s * apr + c * aqr;
                }
                at(p, q) = at(q, p) = 0.0;
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double operator_norm(const StepKernel& f) {
    if (!f.is_symmetric(kSymmetryTol)) throw PreconditionError("operator_norm: kernel must be symmetric");
    const std::size_t k = f.k();
    std::vector<double> s(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            s[i * k + j] = std::sqrt(f.weight(i) * f.weight(j)) * 0.5 * (f.value(i, j) + f.value(j, i));
    const auto eig = symmetric_eigenvalues(std::move(s), k);
    return std::max(std::abs(eig.front()), std::abs(eig.back()));
}

std::vector<double> block_action(const StepKernel& f, std::span<const double> u) {
    if (u.size() != f.k()) throw PreconditionError("block_action: vector length must equal block count");
    std::vector<double> out(f.k(), 0.0);
    for (std::size_t i = 0; i < f.k(); ++i)
        for (std::size_t j = 0; j < f.k(); ++j) out[i] += f.value(i, j) * f.weight(j) * u[j];
    return out;
}

StepGraphon read_step_graphon(std::istream& in) {
    long long k = 0;
    if (!(in >> k) || k < 1) throw ParseError("graphon: expected positive block count");
    const auto n = static_cast<std::size_t>(k);
    std::vector<double> weights(n);
    for (auto& w : weights)
        if (!(in >> w)) throw ParseError("graphon: expected " + std::to_string(n) + " weights");
    std::vector<double> values(n * n);
    for (auto& v : values)
        if (!(in >> v)) throw ParseError("graphon: expected " + std::to_string(n * n) + " matrix entries");
    return StepGraphon(std::move(weights), std::move(values));
}

void write_step_graphon(std::ostream& out, const StepGraphon& f) {
    const auto old = out.precision(17);
    out << f.k() << '\n';
    for (std::size_t i = 0; i < f.k(); ++i) out << (i ? " " : "") << f.weight(i);
    out << '\n';
    for (std::size_t i = 0; i < f.k(); ++i) {
        for (std::size_t j = 0; j < f.k(); ++j) out << (j ? " " : "") << f.value(i, j);
        out << '\n';
    }
    out.precision(old);
}

}  // namespace ldphase
