#include "ldphase/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ldphase/errors.hpp"
#include "ldphase/graphs.hpp"
#include "ldphase/minorant.hpp"
#include "ldphase/rate_fn.hpp"

namespace ldphase {
namespace {

constexpr std::size_t kMaxMessages = 10;

void record(SuiteResult& r, bool ok, const std::string& what) {
    ++r.checks;
    if (ok) return;
    ++r.violations;
    if (r.messages.size() < kMaxMessages) r.messages.push_back(what);
}

std::vector<double> random_weights(Xoshiro256ss& rng, std::size_t k) {
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) total += (x = rng.uniform(0.05, 1.0));
    for (auto& x : w) x /= total;
    return w;
}

std::size_t random_block_count(Xoshiro256ss& rng, std::size_t max_k) { return 1 + rng.below(max_k); }

}  // namespace

StepGraphon random_step_graphon(Xoshiro256ss& rng, std::size_t k) {
    std::vector<double> values(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) values[i * k + j] = values[j * k + i] = rng.uniform();
    return StepGraphon(random_weights(rng, k), std::move(values));
}

StepKernel random_signed_kernel(Xoshiro256ss& rng, std::size_t k) {
    std::vector<double> values(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) values[i * k + j] = values[j * k + i] = rng.uniform(-1.0, 1.0);
    return StepKernel(random_weights(rng, k), std::move(values));
}

SuiteResult verify_holder(std::size_t samples, std::uint64_t seed) {
    SuiteResult r;
    r.name = "holder";
    Xoshiro256ss rng(seed);
    const std::vector<std::pair<std::string, SmallGraph>> graphs = {
        {"K3", SmallGraph::complete(3)},
        {"C4", SmallGraph::cycle(4)},
        {"C5", SmallGraph::cycle(5)},
        {"K4", SmallGraph::complete(4)},
    };
    for (std::size_t s = 0; s < samples; ++s) {
        const StepGraphon f = random_step_graphon(rng, random_block_count(rng, 6));
        for (const auto& [name, h] : graphs) {
            int d = 0;
            for (int v = 0; v < h.n(); ++v) d = std::max(d, h.degree(v));
            const double lhs = hom_density(h, f);
            const double rhs = std::pow(lp_norm(f, d), static_cast<double>(h.m()));
            std::ostringstream msg;
            msg << name << " sample " << s << ": t = " << lhs << " > " << rhs;
            record(r, lhs <= rhs + 1e-12, msg.str());
        }
    }
    return r;
}

SuiteResult verify_sandwich(std::size_t samples, std::uint64_t seed) {
    SuiteResult r;
    r.name = "sandwich";
    Xoshiro256ss rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const StepGraphon f = random_step_graphon(rng, random_block_count(rng, 6));
        const double l1 = lp_norm(f, 1);
        const double l2 = lp_norm(f, 2);
        const double op = operator_norm(f);
        const double cut = cut_norm(f);
        std::ostringstream msg;
        msg << "sample " << s << ": l1 = " << l1 << ", op = " << op << ", l2 = " << l2 << ", cut = " << cut;
        record(r, l1 <= op + 1e-10 && op <= l2 + 1e-10, msg.str());
        record(r, std::pow(op, 4) <= cut + 1e-12, "[0,1] fourth-power " + msg.str());

        const StepKernel g = random_signed_kernel(rng, random_block_count(rng, 6));
        const double gop = operator_norm(g);
        const double gcut = cut_norm(g);
        std::ostringstream smsg;
        smsg << "signed sample " << s << ": op = " << gop << ", cut = " << gcut;
        record(r, std::pow(gop, 4) <= 4.0 * gcut + 1e-12, smsg.str());
    }
    return r;
}

SuiteResult verify_galvin_tetali(std::size_t samples, std::uint64_t seed) {
    SuiteResult r;
    r.name = "gt";
    Xoshiro256ss rng(seed);
    const std::vector<std::pair<std::string, SmallGraph>> graphs = {
        {"C4", SmallGraph::cycle(4)},
        {"C6", SmallGraph::cycle(6)},
        {"K2,2", SmallGraph::complete_bipartite(2, 2)},
        {"K3,3", SmallGraph::complete_bipartite(3, 3)},
        {"Q3", SmallGraph::cube()},
    };
    for (std::size_t s = 0; s < samples; ++s) {
        const auto& [name, g] = graphs[s % graphs.size()];
        const StepGraphon f = random_step_graphon(rng, random_block_count(rng, 5));
        const auto rep = galvin_tetali_check(g, f);
        std::ostringstream msg;
        msg << name << " sample " << s << ": lhs = " << rep.lhs << " > rhs = " << rep.rhs;
        record(r, rep.holds, msg.str());
    }
    const StepGraphon identity = StepGraphon::uniform_blocks(2, {1.0, 0.0, 0.0, 1.0});
    const auto k3 = galvin_tetali_counterexample(SmallGraph::complete(3), identity);
    std::ostringstream msg;
    msg << "K3 counterexample: expected lhs 0.25 > rhs 0.210224, got lhs = " << k3.lhs << ", rhs = " << k3.rhs;
    record(r, !k3.holds && std::abs(k3.lhs - 0.25) <= 1e-12 && std::abs(k3.rhs - std::pow(0.125, 0.75)) <= 1e-12,
           msg.str());
    return r;
}

SuiteResult verify_nesting() {
    SuiteResult r;
    r.name = "nesting";
    const std::pair<double, double> pairs[] = {{1.8, 2.0}, {2.0, 3.0}, {3.0, 6.0}};
    for (const auto& [small, large] : pairs) {
        const double top = p0(small);
        for (int i = 1; i <= 20; ++i) {
            const double p = top * i / 21.0;
            const auto inner = double_tangent(GammaCurve(p, small));
            const auto outer = double_tangent(GammaCurve(p, large));
            std::ostringstream msg;
            msg << "gamma' = " << small << ", gamma = " << large << ", p = " << p;
            if (!inner || !outer) {
                record(r, false, msg.str() + ": missing double tangent");
                continue;
            }
            msg << ": (" << inner->q_lo << ", " << inner->q_hi << ") vs (" << outer->q_lo << ", " << outer->q_hi << ")";
            record(r, outer->q_lo < inner->q_lo && inner->q_hi < outer->q_hi, msg.str());
        }
    }
    return r;
}

std::vector<SuiteResult> run_suite(std::string_view name) {
    if (name == "holder") return {verify_holder()};
    if (name == "gt") return {verify_galvin_tetali()};
    if (name == "nesting") return {verify_nesting()};
    if (name == "sandwich") return {verify_sandwich()};
    if (name == "all") return {verify_holder(), verify_galvin_tetali(), verify_nesting(), verify_sandwich()};
    throw PreconditionError("unknown suite '" + std::string(name) + "' (holder, gt, nesting, sandwich, all)");
}

}  // namespace ldphase
