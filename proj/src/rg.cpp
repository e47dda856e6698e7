#include "conecut/rg.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "conecut/error.hpp"
#include "conecut/report.hpp"

namespace conecut {

namespace {

constexpr double pi = std::numbers::pi;

double require_uniform_thickness(const Ziggurat& zg, const char* who) {
    if (zg.slabs.empty()) {
        throw stack_error(std::string(who) + ": empty stack");
    }
    const double tol = 1e-12 * zg.total_thickness();
    if (!has_uniform_thickness(zg, tol)) {
        throw stack_error(std::string(who) + ": slab thicknesses are not equal");
    }
    return zg.slabs.front().thickness;
}

Slab merge_pair(const Slab& lo, const Slab& hi) {
    return Slab{lo.z_start, lo.thickness + hi.thickness, lo.volume + hi.volume};
}

void check_coarse_grain_pre(const Ziggurat& zg) {
    if (zg.slabs.size() % 2 != 0) {
        throw stack_error("coarse_grain: odd slab count");
    }
    if (!zg.slabs.empty()) require_uniform_thickness(zg, "coarse_grain");
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

} // namespace

Ziggurat coarse_grain(const Ziggurat& zg) {
    check_coarse_grain_pre(zg);
    const std::int64_t pairs = static_cast<std::int64_t>(zg.slabs.size() / 2);
    Ziggurat out;
    out.origin = zg.origin;
    out.rigorous = zg.rigorous;
    out.slabs.resize(static_cast<std::size_t>(pairs));
#pragma omp parallel for schedule(static) if (pairs > 1024)
    for (std::int64_t i = 0; i < pairs; ++i) {
        const std::size_t j = static_cast<std::size_t>(2 * i);
        out.slabs[static_cast<std::size_t>(i)] =
            merge_pair(zg.slabs[j], zg.slabs[j + 1]);
    }
    return out;
}

Ziggurat coarse_grain_serial(const Ziggurat& zg) {
    check_coarse_grain_pre(zg);
    Ziggurat out;
    out.origin = zg.origin;
    out.rigorous = zg.rigorous;
    out.slabs.reserve(zg.slabs.size() / 2);
    for (std::size_t j = 0; j + 1 < zg.slabs.size(); j += 2) {
        out.slabs.push_back(merge_pair(zg.slabs[j], zg.slabs[j + 1]));
    }
    return out;
}

Ziggurat renormalize_to_scale(const Ziggurat& zg, double target_thickness) {
    const double h = require_uniform_thickness(zg, "renormalize_to_scale");
    if (!(target_thickness > 0.0)) {
        throw stack_error("renormalize_to_scale: target thickness must be > 0");
    }
    const double ratio = target_thickness / h;
    const double k_real = std::log2(ratio);
    const long long k = std::llround(k_real);
    if (k < 0 || std::abs(ratio - std::ldexp(1.0, static_cast<int>(k))) >
                     1e-9 * ratio) {
        throw stack_error(
            "renormalize_to_scale: target is not h * 2^k for integer k >= 0");
    }
    Ziggurat out = zg;
    for (long long step = 0; step < k; ++step) {
        if (out.slabs.size() % 2 != 0) {
            throw stack_error(
                "renormalize_to_scale: odd slab count before reaching target");
        }
        out = coarse_grain(out);
    }
    return out;
}

std::optional<double> invariance_distance(const Ziggurat& zg) {
    require_uniform_thickness(zg, "invariance_distance");
    const double volume = total_volume(zg);
    if (volume == 0.0) return std::nullopt; // degenerate figure
    const double thickness = zg.total_thickness();
    const double rho = std::sqrt(volume / (pi * thickness));
    double worst = 0.0;
    for (const Slab& slab : zg.slabs) {
        worst = std::max(worst, std::abs(slab.effective_radius() - rho) / rho);
    }
    return worst;
}

RenormalizedSeries renormalized_series(const Profile& p, std::int64_t n0,
                                       int k_max, Mode mode) {
    if (n0 < 1) throw stack_error("renormalized_series: n0 must be >= 1");
    if (k_max < 0) throw stack_error("renormalized_series: k_max must be >= 0");

    RenormalizedSeries series;
    series.base_slab_count = n0;
    series.base_thickness = p.height() / static_cast<double>(n0);

    // Limit figure: exact bin volumes from the oracle quadrature, one bin
    // per base slab.
    const std::int64_t panels_per_bin =
        std::max<std::int64_t>(1, quad::oracle_panels / n0);
    series.limit_figure.origin = 0.0;
    series.limit_figure.slabs.reserve(static_cast<std::size_t>(n0));
    for (std::int64_t i = 0; i < n0; ++i) {
        const double z0 = static_cast<double>(i) * series.base_thickness;
        const double z1 = (i + 1 == n0)
                              ? p.height()
                              : static_cast<double>(i + 1) * series.base_thickness;
        series.limit_figure.slabs.push_back(
            Slab{z0, series.base_thickness,
                 p.oracle_volume_between(z0, z1, panels_per_bin)});
    }

    series.levels.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        SeriesLevel level;
        level.level = k;
        level.fine_slab_count = n0 << k;
        const Ziggurat fine = build_ziggurat(p, level.fine_slab_count, mode);
        level.figure = renormalize_to_scale(fine, series.base_thickness);
        level.bin_errors.reserve(static_cast<std::size_t>(n0));
        for (std::int64_t i = 0; i < n0; ++i) {
            const std::size_t bin = static_cast<std::size_t>(i);
            level.bin_errors.push_back(
                std::abs(level.figure.slabs[bin].volume -
                         series.limit_figure.slabs[bin].volume));
        }
        if (k > 0) {
            const SeriesLevel& prev = series.levels.back();
            level.bin_error_ratios.reserve(static_cast<std::size_t>(n0));
            for (std::int64_t i = 0; i < n0; ++i) {
                const std::size_t bin = static_cast<std::size_t>(i);
                level.bin_error_ratios.push_back(prev.bin_errors[bin] /
                                                 level.bin_errors[bin]);
            }
        }
        series.levels.push_back(std::move(level));
    }
    return series;
}

FixedPointReport iterate_to_fixed_point(const Ziggurat& zg) {
    require_uniform_thickness(zg, "iterate_to_fixed_point");
    if (!is_power_of_two(zg.slabs.size())) {
        throw stack_error("iterate_to_fixed_point: slab count is not a power of two");
    }
    FixedPointReport report;
    Ziggurat current = zg;
    report.iterates.push_back({current, invariance_distance(current)});
    while (current.slabs.size() > 1) {
        current = coarse_grain(current);
        report.iterates.push_back({current, invariance_distance(current)});
    }
    report.terminal_radius = current.slabs.front().effective_radius();
    return report;
}

std::string to_json(const RenormalizedSeries& series) {
    std::ostringstream out;
    out << "{\"base_slab_count\":" << series.base_slab_count
        << ",\"base_thickness\":" << report::fmt_machine(series.base_thickness)
        << ",\"limit_figure\":" << to_json(series.limit_figure)
        << ",\"levels\":[";
    for (std::size_t li = 0; li < series.levels.size(); ++li) {
        const SeriesLevel& level = series.levels[li];
        if (li > 0) out << ",";
        out << "{\"level\":" << level.level
            << ",\"fine_slab_count\":" << level.fine_slab_count
            << ",\"figure\":" << to_json(level.figure) << ",\"bin_errors\":[";
        for (std::size_t i = 0; i < level.bin_errors.size(); ++i) {
            if (i > 0) out << ",";
            out << report::fmt_json_number(level.bin_errors[i]);
        }
        out << "],\"bin_error_ratios\":[";
        for (std::size_t i = 0; i < level.bin_error_ratios.size(); ++i) {
            if (i > 0) out << ",";
            out << report::fmt_json_number(level.bin_error_ratios[i]);
        }
        out << "]}";
    }
    out << "]}";
    return out.str();
}

std::string to_csv(const RenormalizedSeries& series) {
    std::ostringstream out;
    out << "level,bin,volume,error\n";
    for (const SeriesLevel& level : series.levels) {
        for (std::size_t bin = 0; bin < level.figure.slabs.size(); ++bin) {
            out << level.level << "," << bin << ","
                << report::fmt_machine(level.figure.slabs[bin].volume) << ","
                << report::fmt_machine(level.bin_errors[bin]) << "\n";
        }
    }
    return out.str();
}

std::string to_json(const FixedPointReport& report) {
    std::ostringstream out;
    out << "{\"iterates\":[";
    for (std::size_t i = 0; i < report.iterates.size(); ++i) {
        const FixedPointIterate& it = report.iterates[i];
        if (i > 0) out << ",";
        out << "{\"figure\":" << to_json(it.figure)
            << ",\"invariance_distance\":";
        if (it.distance) {
            out << report::fmt_json_number(*it.distance);
        } else {
            out << "null";
        }
        out << "}";
    }
    out << "],\"terminal_radius\":"
        << report::fmt_machine(report.terminal_radius) << "}";
    return out.str();
}

std::string to_csv(const FixedPointReport& report) {
    std::ostringstream out;
    out << "iterate,slabs,thickness,invariance_distance\n";
    for (std::size_t i = 0; i < report.iterates.size(); ++i) {
        const FixedPointIterate& it = report.iterates[i];
        out << i << "," << it.figure.slab_count() << ","
            << report::fmt_machine(it.figure.slabs.empty()
                                       ? 0.0
                                       : it.figure.slabs.front().thickness)
            << ",";
        if (it.distance) {
            out << report::fmt_machine(*it.distance);
        } else {
            out << "degenerate";
        }
        out << "\n";
    }
    return out.str();
}

} // namespace conecut
