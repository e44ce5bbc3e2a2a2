#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ldphase/graphon.hpp"
#include "ldphase/rng.hpp"

namespace ldphase {

/// Random step graphon with k blocks: weights from normalized uniforms on
/// [0.05, 1), values uniform on [0, 1] above the diagonal and mirrored.
StepGraphon random_step_graphon(Xoshiro256ss& rng, std::size_t k);

/// Random symmetric signed kernel with values uniform on [-1, 1].
StepKernel random_signed_kernel(Xoshiro256ss& rng, std::size_t k);

struct SuiteResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::vector<std::string> messages;  ///< first few violations

    bool passed() const noexcept { return violations == 0; }
};

/// t(H, f) <= ||f||_d^{e(H)} for H in {K3, C4, C5, K4}, d the max degree.
SuiteResult verify_holder(std::size_t samples = 1000, std::uint64_t seed = 1);

/// ||f||_1 <= ||f||_op <= ||f||_2 on random graphons, and the fourth-power
/// bounds ||f||_op^4 <= 4 ||f||_cut (signed) and ||f||_op^4 <= ||f||_cut ([0,1]).
SuiteResult verify_sandwich(std::size_t samples = 1000, std::uint64_t seed = 2);

/// Galvin-Tetali on C4, C6, K_{3,3}, Q3 and K_{2,2}; the K3 / identity
/// two-block case must fail with lhs 0.25 and rhs 0.125^{3/4}.
SuiteResult verify_galvin_tetali(std::size_t samples = 200, std::uint64_t seed = 3);

/// Touch interval of the gamma'-curve strictly inside that of the gamma-curve
/// for (gamma', gamma) in {(1.8, 2), (2, 3), (3, 6)} at 20 p below p0(gamma').
SuiteResult verify_nesting();

/// holder, gt, nesting, sandwich or all.
std::vector<SuiteResult> run_suite(std::string_view name);

}  // namespace ldphase
