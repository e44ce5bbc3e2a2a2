#pragma once

#include <cmath>
#include <optional>

namespace ldphase::roots {

struct Bracket {
    double lo;
    double hi;
};

/// Bisection for a sign change of `f` on [lo, hi].
///
/// Returns nullopt when f(lo) and f(hi) share a sign. Iterates until the
/// bracket is narrower than `tol` or `max_iter` halvings were made; the
/// midpoint of the final bracket is returned. Exact zeros short-circuit.
template <typename F>
std::optional<double> bisect(F&& f, double lo, double hi, double tol = 1e-15, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) return std::nullopt;
    for (int it = 0; it < max_iter && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if (std::signbit(fmid) == std::signbit(flo)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace ldphase::roots
