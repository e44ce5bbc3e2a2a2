#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldphase/graphon.hpp"
#include "ldphase/graphs.hpp"

namespace ldphase {

enum class Verdict { ReplicaSymmetric, SymmetryBreaking, Boundary };

std::string_view to_string(Verdict v);

/// Which functional the witness beats: a subgraph density t(H, f) or the
/// operator norm.
enum class WitnessFunctional { HomDensity, OperatorNorm };

/// Three-block graphon f_eps on blocks (I1, I0, I2) with weights
/// (a, 1-a-b, b), a = s eps^2, b = (1-s) eps^2 + eps^3. It has a larger
/// target functional than the constant r and a smaller rate.
struct BreakWitness {
    StepGraphon graphon;
    double epsilon;
    double r1;
    double r2;
    double s;
    double t_value;    ///< t(H, f_eps), or ||f_eps||_op
    double target_t;   ///< r^{e(H)}, or r
    double hp_value;   ///< h_p(f_eps)
    double target_hp;  ///< h_p(r)
    WitnessFunctional functional = WitnessFunctional::HomDensity;
};

struct PhaseClassification {
    Verdict verdict;
    /// h_p(r) for the symmetric and boundary verdicts; h_p(f_eps) when a
    /// breaking witness exists, h_p(r) otherwise.
    double rate;
    std::optional<BreakWitness> witness;
    /// Why a breaking verdict has no witness. Close to the boundary the gain
    /// of f_eps drops below double precision for every eps; the verdict still
    /// follows from the minorant.
    std::string witness_note = {};
};

/// eps = 2^{-3 - j/16} for j = 0..592, i.e. 2^-3 down to 2^-40.
std::vector<double> default_epsilon_schedule();

/// Default d-regular test graph: K3 for d = 2, K4 for d = 3, otherwise a
/// circulant on d+2 (d even) or d+3 (d odd) vertices.
SmallGraph default_regular_graph(int d);

/// Minorant verdict alone: where r sits relative to the double-tangent touch
/// points of x -> h_p(x^{1/d}), with the 1e-9 boundary band.
Verdict minorant_verdict(double d, double p, double r);

/// Upper-tail classification of (p, r) for d-regular subgraph counts: is
/// (r^d, h_p(r)) on the convex minorant of x -> h_p(x^{1/d})?
///
/// Boundary when r is within 1e-9 of a double-tangent touch point. A
/// breaking verdict carries a verified witness built for `h` (or the default
/// graph for d) unless the search is exhausted, in which case witness_note
/// holds the search diagnostics.
PhaseClassification classify_upper_tail(int d, double p, double r, const std::optional<SmallGraph>& h = std::nullopt);

/// Witness for a d-regular H at a point strictly inside the breaking region.
/// Throws PreconditionError off the region and SearchExhaustedError (listing
/// both defects per eps) if no eps in the schedule works.
BreakWitness build_break_witness(const SmallGraph& h, double p, double r, std::span<const double> eps_schedule);
BreakWitness build_break_witness(const SmallGraph& h, double p, double r);

struct SpectralCertificate {
    BreakWitness witness;      ///< functional == OperatorNorm
    std::vector<double> u;     ///< test vector on (I1, I0, I2)
    std::vector<double> t_u;   ///< T_{f_eps} u
    bool verified;             ///< T u > r u blockwise and ||f_eps||_op > r
};

/// Spectral-radius upper tail; same verdicts as the d = 2 subgraph case.
PhaseClassification classify_spectral(double p, double r);

/// d = 2 construction plus the blockwise eigenvector test. Throws like
/// build_break_witness.
SpectralCertificate spectral_break_certificate(double p, double r);

/// Lower tail (0 < r <= p) for graphs known to satisfy Sidorenko's
/// inequality: trees, even cycles, complete bipartite graphs. Always
/// replica symmetric with rate h_p(r). Other H raise UnsupportedError.
PhaseClassification lower_tail_sidorenko_note(const SmallGraph& h, double p, double r);

/// r0 in (0, p) with h_p(r0) = h_p(0) / 2.
double lower_tail_nonbipartite_r0(double p);

/// Two equal blocks with values [[0, p], [p, 0]].
StepGraphon checkerboard_graphon(double p);

/// Graphon text, then a header line
/// `epsilon,r1,r2,s,t_value,target_t,hp_value,target_hp` and one value row.
void write_witness_report(std::ostream& out, const BreakWitness& w);

}  // namespace ldphase
