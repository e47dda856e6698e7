#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "conecut/error.hpp"
#include "conecut/summation.hpp"

namespace conecut::quad {

// Panel count used by the volume oracles.
inline constexpr std::int64_t oracle_panels = std::int64_t{1} << 20;

// Fixed block size of the parallel kernel. Block boundaries do not depend
// on the thread count, and blocks are combined in index order, so the
// result is identical for any number of threads.
inline constexpr std::int64_t block_panels = 4096;

// Reference kernel: plain left-to-right composite midpoint rule.
// Abscissae are clamped into [a, b] so the integrand is never evaluated
// outside its domain, even for very narrow intervals.
template <class F>
double midpoint_serial(F&& f, double a, double b, std::int64_t panels) {
    if (panels < 1) throw error("midpoint_serial: panel count must be >= 1");
    const double h = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::int64_t i = 0; i < panels; ++i) {
        const double x =
            std::clamp(a + (static_cast<double>(i) + 0.5) * h, a, b);
        sum += f(x);
    }
    return sum * h;
}

// Production kernel: block-partitioned midpoint rule. Each block is summed
// left to right; block sums are combined in index order with compensation.
template <class F>
double midpoint_blocked(F&& f, double a, double b, std::int64_t panels) {
    if (panels < 1) throw error("midpoint_blocked: panel count must be >= 1");
    const double h = (b - a) / static_cast<double>(panels);
    const std::int64_t nblocks = (panels + block_panels - 1) / block_panels;
    std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t blk = 0; blk < nblocks; ++blk) {
        const std::int64_t lo = blk * block_panels;
        const std::int64_t hi = std::min(lo + block_panels, panels);
        double s = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) {
            const double x =
                std::clamp(a + (static_cast<double>(i) + 0.5) * h, a, b);
            s += f(x);
        }
        partial[static_cast<std::size_t>(blk)] = s;
    }
    CompensatedSum total;
    for (double s : partial) total.add(s);
    return total.value() * h;
}

} // namespace conecut::quad
