#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace ldphase {

class SmallGraph;

/// Step kernel on [0,1]^2: block measures w_i and a real k x k value matrix.
///
/// Weights must be positive and sum to one; a total within 1e-9 of one is
/// renormalized, anything further off is rejected.
class StepKernel {
public:
    StepKernel(std::vector<double> weights, std::vector<double> values);

    std::size_t k() const noexcept { return weights_.size(); }
    double weight(std::size_t i) const { return weights_[i]; }
    double value(std::size_t i, std::size_t j) const { return values_[i * k() + j]; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::span<const double> values() const noexcept { return values_; }
    bool is_symmetric(double tol = 0.0) const;

protected:
    std::vector<double> weights_;
    std::vector<double> values_;
};

/// Symmetric step kernel with values in [0,1]: a step graphon.
class StepGraphon : public StepKernel {
public:
    StepGraphon(std::vector<double> weights, std::vector<double> values);

    static StepGraphon constant(double c);
    /// k equal blocks with the given k x k matrix (row-major).
    static StepGraphon uniform_blocks(std::size_t k, std::vector<double> values);
    /// The n-block step graphon f^G of a graph's adjacency matrix.
    static StepGraphon from_graph(const SmallGraph& g);
};

/// h_p(f) = sum_ij w_i w_j h_p(M_ij).
double rate_functional(const StepGraphon& f, double p);

/// (sum_ij w_i w_j |M_ij|^d)^{1/d}, d >= 1.
double lp_norm(const StepKernel& f, int d);

/// t(H, f): exact sum over block assignments of V(H). Throws SizeLimitError
/// when k^{v(H)} exceeds 1e8.
double hom_density(const SmallGraph& h, const StepKernel& f);

/// Cut norm sup_{S,T} |int_{SxT} f| by exhaustive search over block subsets,
/// k <= 12. Exact: the objective is bilinear in fractional block inclusions.
double cut_norm(const StepKernel& f);

/// Same search without the public block cap (callers bound the work).
double cut_norm_unbounded(const StepKernel& f);

/// ||f - c||_cut, which equals the cut distance to the constant c.
double cut_distance_to_constant(const StepGraphon& f, double c);

/// f - c as a signed kernel.
StepKernel shifted(const StepKernel& f, double c);

/// Largest |eigenvalue| of D^{1/2} M D^{1/2}; M must be symmetric.
double operator_norm(const StepKernel& f);

/// Eigenvalues (ascending) of the symmetric matrix `a` (n x n, row-major) by
/// cyclic Jacobi rotations.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n);

/// Block values of (T_f u) for a block-constant u.
std::vector<double> block_action(const StepKernel& f, std::span<const double> u);

/// Text format: `k`, then k weights, then k rows of k values.
StepGraphon read_step_graphon(std::istream& in);
void write_step_graphon(std::ostream& out, const StepGraphon& f);

}  // namespace ldphase
