#include "ldphase/phase.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ldphase/errors.hpp"
#include "ldphase/minorant.hpp"
#include "ldphase/rate_fn.hpp"
#include "ldphase/roots.hpp"

namespace ldphase {
namespace {

constexpr double kBoundaryBand = 1e-9;
// relative, so that tiny targets such as r^{e(H)} for large H stay reachable
constexpr double kRelMargin = 1e-12;

void check_upper_tail_point(double p, double r) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0,1)");
    if (!(r >= p && r < 1.0)) throw DomainError("upper tail needs p <= r < 1");
}

StepGraphon three_block(double eps, double s, double r, double r1, double r2) {
    const double a = s * eps * eps;
    const double b = (1.0 - s) * eps * eps + eps * eps * eps;
    // blocks ordered (I1, I0, I2)
    std::vector<double> values = {r, r1, r,   //
                                  r1, r, r2,  //
                                  r, r2, r};
    return StepGraphon({a, 1.0 - a - b, b}, std::move(values));
}

struct Chord {
    double r1;
    double r2;
    double s;
};

Chord breaking_chord(int d, double p, double r) {
    const auto dt = double_tangent(GammaCurve(p, d));
    if (!dt || !(r > dt->q_lo + kBoundaryBand && r < dt->q_hi - kBoundaryBand)) {
        std::ostringstream msg;
        msg << "(p, r) = (" << p << ", " << r << ") is not strictly inside the breaking region for d = " << d;
        throw PreconditionError(msg.str());
    }
    const double r1d = std::pow(dt->q_lo, d);
    const double r2d = std::pow(dt->q_hi, d);
    return {dt->q_lo, dt->q_hi, (r2d - std::pow(r, d)) / (r2d - r1d)};
}

bool is_even_cycle(const SmallGraph& h) {
    const auto d = is_d_regular(h);
    if (!d || *d != 2 || h.n() % 2 != 0) return false;
    // 2-regular and connected
    std::vector<char> seen(static_cast<std::size_t>(h.n()), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : h.neighbors(u)) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == h.n();
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::ReplicaSymmetric: return "ReplicaSymmetric";
        case Verdict::SymmetryBreaking: return "SymmetryBreaking";
        case Verdict::Boundary: return "Boundary";
    }
    return "?";
}

Verdict minorant_verdict(double d, double p, double r) {
    check_upper_tail_point(p, r);
    const auto dt = double_tangent(GammaCurve(p, d));
    if (!dt) return Verdict::ReplicaSymmetric;
    if (std::abs(r - dt->q_lo) <= kBoundaryBand || std::abs(r - dt->q_hi) <= kBoundaryBand) return Verdict::Boundary;
    if (r < dt->q_lo || r > dt->q_hi) return Verdict::ReplicaSymmetric;
    return Verdict::SymmetryBreaking;
}

std::vector<double> default_epsilon_schedule() {
    std::vector<double> eps;
    // the admissible window in eps can be narrower than a factor of 2
    for (int j = 0; j <= 37 * 16; ++j) eps.push_back(std::exp2(-3.0 - j / 16.0));
    return eps;
}

SmallGraph default_regular_graph(int d) {
    if (d < 2) throw PreconditionError("default_regular_graph: d must be at least 2");
    if (d == 2) return SmallGraph::complete(3);
    if (d == 3) return SmallGraph::complete(4);
    std::vector<int> offsets;
    for (int s = 1; s <= d / 2; ++s) offsets.push_back(s);
    if (d % 2 == 0) return SmallGraph::circulant(d + 2, offsets);
    const int n = d + 3;
    offsets.push_back(n / 2);
    return SmallGraph::circulant(n, offsets);
}

BreakWitness build_break_witness(const SmallGraph& h, double p, double r, std::span<const double> eps_schedule) {
    check_upper_tail_point(p, r);
    const auto d = is_d_regular(h);
    if (!d || *d < 2) throw PreconditionError("build_break_witness: H must be d-regular with d >= 2");
    const Chord chord = breaking_chord(*d, p, r);
    const double target_t = std::pow(r, static_cast<double>(h.m()));
    const double target_hp = rate(r, p);

    std::ostringstream diag;
    diag << std::setprecision(6);
    const std::size_t stride = std::max<std::size_t>(1, eps_schedule.size() / 40);  // keep the report short
    std::size_t idx = 0;
    for (double eps : eps_schedule) {
        StepGraphon f = three_block(eps, chord.s, r, chord.r1, chord.r2);
        const double t = hom_density(h, f);
        const double hp = rate_functional(f, p);
        if (t > target_t * (1.0 + kRelMargin) && hp < target_hp * (1.0 - kRelMargin)) {
            return {std::move(f), eps, chord.r1, chord.r2, chord.s, t, target_t, hp, target_hp,
                    WitnessFunctional::HomDensity};
        }
        if (idx++ % stride == 0) diag << "\n  eps=" << eps << " t-defect=" << (t - target_t) << " hp-defect=" << (hp - target_hp);
    }
    throw SearchExhaustedError("build_break_witness: no eps in the schedule works" + diag.str());
}

BreakWitness build_break_witness(const SmallGraph& h, double p, double r) {
    const auto eps = default_epsilon_schedule();
    return build_break_witness(h, p, r, eps);
}

PhaseClassification classify_upper_tail(int d, double p, double r, const std::optional<SmallGraph>& h) {
    if (d < 2) throw PreconditionError("classify_upper_tail: d must be at least 2");
    check_upper_tail_point(p, r);
    if (h) {
        const auto dh = is_d_regular(*h);
        if (!dh || *dh != d) throw PreconditionError("classify_upper_tail: H is not d-regular for the given d");
    }
    const double hp_r = rate(r, p);
    const Verdict v = minorant_verdict(d, p, r);
    if (v != Verdict::SymmetryBreaking) return {v, hp_r, std::nullopt};
    try {
        BreakWitness w = build_break_witness(h ? *h : default_regular_graph(d), p, r);
        const double hp = w.hp_value;
        return {Verdict::SymmetryBreaking, hp, std::move(w)};
    } catch (const SearchExhaustedError& e) {
        return {Verdict::SymmetryBreaking, hp_r, std::nullopt, e.what()};
    }
}

SpectralCertificate spectral_break_certificate(double p, double r) {
    check_upper_tail_point(p, r);
    const Chord chord = breaking_chord(2, p, r);
    const double target_hp = rate(r, p);

    std::ostringstream diag;
    diag << std::setprecision(6);
    const auto schedule = default_epsilon_schedule();
    const std::size_t stride = std::max<std::size_t>(1, schedule.size() / 40);
    std::size_t idx = 0;
    for (double eps : schedule) {
        StepGraphon f = three_block(eps, chord.s, r, chord.r1, chord.r2);
        const double a = f.weight(0);
        const double b = f.weight(2);
        const double mid = 1.0 - a - b;
        std::vector<double> u = {mid * chord.r1, r, mid * chord.r2};
        std::vector<double> tu = block_action(f, u);
        bool above = true;
        for (std::size_t i = 0; i < 3; ++i) above = above && tu[i] > r * u[i];
        const double op = operator_norm(f);
        const double hp = rate_functional(f, p);
        if (above && op > r && hp < target_hp * (1.0 - kRelMargin)) {
            BreakWitness w{std::move(f), eps, chord.r1, chord.r2, chord.s, op, r, hp, target_hp,
                           WitnessFunctional::OperatorNorm};
            return {std::move(w), std::move(u), std::move(tu), true};
        }
        if (idx++ % stride == 0) diag << "\n  eps=" << eps << " op-defect=" << (op - r) << " hp-defect=" << (hp - target_hp)
             << " I0-action-defect=" << (tu[1] - r * u[1]);
    }
    throw SearchExhaustedError("spectral_break_certificate: no eps in the schedule works" + diag.str());
}

PhaseClassification classify_spectral(double p, double r) {
    check_upper_tail_point(p, r);
    const double hp_r = rate(r, p);
    const Verdict v = minorant_verdict(2.0, p, r);
    if (v != Verdict::SymmetryBreaking) return {v, hp_r, std::nullopt};
    try {
        SpectralCertificate cert = spectral_break_certificate(p, r);
        const double hp = cert.witness.hp_value;
        return {Verdict::SymmetryBreaking, hp, std::move(cert.witness)};
    } catch (const SearchExhaustedError& e) {
        return {Verdict::SymmetryBreaking, hp_r, std::nullopt, e.what()};
    }
}

PhaseClassification lower_tail_sidorenko_note(const SmallGraph& h, double p, double r) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0,1)");
    if (!(r > 0.0 && r <= p)) throw DomainError("lower tail needs 0 < r <= p");
    if (!(is_tree(h) || is_even_cycle(h) || is_complete_bipartite(h))) {
        throw UnsupportedError("lower tail: H is not a tree, even cycle or complete bipartite graph");
    }
    return {Verdict::ReplicaSymmetric, rate(r, p), std::nullopt};
}

double lower_tail_nonbipartite_r0(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0,1)");
    const double half = 0.5 * rate(0.0, p);
    const auto r0 = roots::bisect([&](double r) { return rate(r, p) - half; }, 0.0, p, 1e-15);
    if (!r0) throw ConvergenceError("lower_tail_nonbipartite_r0: no sign change");
    return *r0;
}

StepGraphon checkerboard_graphon(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("checkerboard_graphon: p must lie in [0,1]");
    return StepGraphon::uniform_blocks(2, {0.0, p, p, 0.0});
}

void write_witness_report(std::ostream& out, const BreakWitness& w) {
    write_step_graphon(out, w.graphon);
    const auto old = out.precision(17);
    out << "epsilon,r1,r2,s,t_value,target_t,hp_value,target_hp\n";
    out << w.epsilon << ',' << w.r1 << ',' << w.r2 << ',' << w.s << ',' << w.t_value << ',' << w.target_t << ','
        << w.hp_value << ',' << w.target_hp << '\n';
    out.precision(old);
}

}  // namespace ldphase
