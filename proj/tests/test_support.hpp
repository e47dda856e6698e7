#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "conecut/profile.hpp"
#include "conecut/ziggurat.hpp"

namespace testsupport {

inline double rel_diff(double a, double b) {
    const double denom = std::max(std::abs(a), std::abs(b));
    if (denom == 0.0) return 0.0;
    return std::abs(a - b) / denom;
}

// Uniform-thickness stack with the given per-slab volumes.
inline conecut::Ziggurat make_stack(double origin, double thickness,
                                    const std::vector<double>& volumes) {
    conecut::Ziggurat zg;
    zg.origin = origin;
    zg.slabs.reserve(volumes.size());
    for (std::size_t i = 0; i < volumes.size(); ++i) {
        zg.slabs.push_back({origin + static_cast<double>(i) * thickness,
                            thickness, volumes[i]});
    }
    return zg;
}

inline conecut::Ziggurat random_stack(std::mt19937& rng, std::size_t n,
                                      double max_volume = 10.0) {
    std::uniform_real_distribution<double> thick(1e-3, 1.0);
    std::uniform_real_distribution<double> vol(0.0, max_volume);
    std::uniform_real_distribution<double> orig(-5.0, 5.0);
    const double h = thick(rng);
    std::vector<double> volumes(n);
    for (double& v : volumes) v = vol(rng);
    return make_stack(orig(rng), h, volumes);
}

// Random monotone piecewise-linear profile on [0, H], H in [0.5, 10].
// Knots sit on a 64-cell grid so slopes stay bounded.
inline conecut::Profile random_monotone_tabulated(std::mt19937& rng) {
    std::uniform_int_distribution<int> count(2, 12);
    std::uniform_real_distribution<double> height(0.5, 10.0);
    std::uniform_real_distribution<double> radius(0.0, 5.0);
    std::bernoulli_distribution decreasing(0.5);

    const int n = count(rng);
    const double H = height(rng);
    std::vector<int> cells{0, 64};
    std::uniform_int_distribution<int> interior(1, 63);
    while (static_cast<int>(cells.size()) < n) {
        const int c = interior(rng);
        if (std::find(cells.begin(), cells.end(), c) == cells.end()) {
            cells.push_back(c);
        }
    }
    std::sort(cells.begin(), cells.end());

    std::vector<double> rs(cells.size());
    for (double& r : rs) r = radius(rng);
    std::sort(rs.begin(), rs.end());
    if (decreasing(rng)) std::reverse(rs.begin(), rs.end());

    std::vector<conecut::ProfileSample> samples(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const double z = (cells[i] == 64)
                             ? H
                             : H * (static_cast<double>(cells[i]) / 64.0);
        samples[i] = {z, rs[i]};
    }
    return conecut::Profile::tabulated(std::move(samples));
}

// Upper bound on the midpoint-oracle error for a monotone profile: the
// rule's per-panel defect is at most half a panel of the total variation
// of pi r^2.
inline double tabulated_oracle_slack(const conecut::Profile& p,
                                     std::int64_t panels = std::int64_t{1}
                                                           << 20) {
    const double r0 = p.radius(0.0);
    const double rH = p.radius(p.height());
    const double tv =
        3.14159265358979323846 * std::abs(r0 * r0 - rH * rH);
    const double h = p.height() / static_cast<double>(panels);
    return 4.0 * 0.5 * h * tv + 1e-12;
}

} // namespace testsupport
