#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conecut/profile.hpp"
#include "conecut/ziggurat.hpp"

namespace conecut {

// Wilson averaging step: slabs (2i, 2i+1) merge into one slab at
// z_start(2i) whose thickness is the union and whose volume is the sum of
// the pair. The slab count halves; the total volume is preserved up to one
// rounding per pair. Requires an even slab count and uniform thickness.
Ziggurat coarse_grain(const Ziggurat& zg);

// Reference implementation of coarse_grain; bit-identical output.
Ziggurat coarse_grain_serial(const Ziggurat& zg);

// coarse_grain applied k times, where target_thickness = h * 2^k for the
// stack's uniform thickness h. Refuses targets that are not a power-of-two
// multiple of h (within 1e-9 relative) or that would pass through an odd
// slab count.
Ziggurat renormalize_to_scale(const Ziggurat& zg, double target_thickness);

// Relative sup-norm distance to the constant-radius (invariant) family:
// max over slabs of |effective_radius - rho| / rho with
// rho = sqrt(V_total / (pi * total_thickness)). Empty for zero-volume
// stacks, where the distance is undefined.
std::optional<double> invariance_distance(const Ziggurat& zg);

struct SeriesLevel {
    int level;                    // k
    std::int64_t fine_slab_count; // n0 * 2^k, before renormalization
    Ziggurat figure;              // renormalized back to n0 slabs
    // Per-bin |volume - limit volume|, and the ratio of the previous
    // level's error to this one (empty at level 0).
    std::vector<double> bin_errors;
    std::vector<double> bin_error_ratios;
};

// The renormalized series: progressively finer stacks, each coarse-grained
// back to the base thickness H/n0 so every member has the same slab count
// and thickness. The limit figure holds the exact per-bin volumes from the
// bin-restricted oracle quadrature.
struct RenormalizedSeries {
    std::int64_t base_slab_count = 0;
    double base_thickness = 0.0;
    Ziggurat limit_figure;
    std::vector<SeriesLevel> levels;
};

RenormalizedSeries renormalized_series(const Profile& p, std::int64_t n0,
                                       int k_max, Mode mode);

struct FixedPointIterate {
    Ziggurat figure;
    std::optional<double> distance; // invariance_distance of the figure
};

// Trajectory of repeated coarse-graining down to a single slab: the
// terminal figure is a member of the constant-radius family with
// radius sqrt(V_total / (pi * H)).
struct FixedPointReport {
    std::vector<FixedPointIterate> iterates; // input first, terminal last
    double terminal_radius = 0.0;
};

// Requires a power-of-two slab count and uniform thickness.
FixedPointReport iterate_to_fixed_point(const Ziggurat& zg);

std::string to_json(const RenormalizedSeries& series);
// Flat rows "level,bin,volume,error".
std::string to_csv(const RenormalizedSeries& series);

std::string to_json(const FixedPointReport& report);
// Flat rows "iterate,slabs,thickness,invariance_distance"; degenerate
// distances print as "degenerate".
std::string to_csv(const FixedPointReport& report);

} // namespace conecut
