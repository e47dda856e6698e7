#include "conecut/ziggurat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "conecut/error.hpp"
#include "conecut/report.hpp"
#include "conecut/summation.hpp"

namespace conecut {

namespace {

constexpr double pi = std::numbers::pi;

// Shared slab kernel: slab i of n over [0, H]. The plane positions are
// derived as i*h (not accumulated) so the pasting condition holds exactly;
// the top plane of the last slab is H itself.
Slab make_slab(const Profile& p, std::int64_t i, std::int64_t n, double h,
               Mode mode) {
    const double z0 = static_cast<double>(i) * h;
    const double z1 = (i + 1 == n) ? p.height() : static_cast<double>(i + 1) * h;
    const double r0 = p.radius(z0);
    const double r1 = p.radius(std::min(z1, p.height()));
    const double r = (mode == Mode::inscribed) ? std::min(r0, r1)
                                               : std::max(r0, r1);
    return Slab{z0, h, pi * (r * r) * h};
}

} // namespace

double Slab::effective_radius() const {
    return std::sqrt(volume / (pi * thickness));
}

const char* to_string(Mode mode) {
    return mode == Mode::inscribed ? "inscribed" : "circumscribed";
}

double Ziggurat::total_thickness() const {
    CompensatedSum s;
    for (const Slab& slab : slabs) s.add(slab.thickness);
    return s.value();
}

bool is_contiguous(const Ziggurat& zg, double abs_tol) {
    if (zg.slabs.empty()) return true;
    if (std::abs(zg.slabs.front().z_start - zg.origin) > abs_tol) return false;
    for (std::size_t i = 1; i < zg.slabs.size(); ++i) {
        const double expected =
            zg.slabs[i - 1].z_start + zg.slabs[i - 1].thickness;
        if (std::abs(zg.slabs[i].z_start - expected) > abs_tol) return false;
    }
    return true;
}

bool has_uniform_thickness(const Ziggurat& zg, double abs_tol) {
    if (zg.slabs.empty()) return true;
    const double h = zg.slabs.front().thickness;
    for (const Slab& slab : zg.slabs) {
        if (std::abs(slab.thickness - h) > abs_tol) return false;
    }
    return true;
}

Ziggurat build_ziggurat(const Profile& p, std::int64_t n, Mode mode) {
    if (n < 1) throw stack_error("build_ziggurat: need at least one slab");
    const double h = p.height() / static_cast<double>(n);
    Ziggurat zg;
    zg.origin = 0.0;
    zg.rigorous = p.monotone();
    zg.slabs.resize(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) if (n > 1024)
    for (std::int64_t i = 0; i < n; ++i) {
        zg.slabs[static_cast<std::size_t>(i)] = make_slab(p, i, n, h, mode);
    }
    return zg;
}

Ziggurat build_ziggurat_serial(const Profile& p, std::int64_t n, Mode mode) {
    if (n < 1) throw stack_error("build_ziggurat: need at least one slab");
    const double h = p.height() / static_cast<double>(n);
    Ziggurat zg;
    zg.origin = 0.0;
    zg.rigorous = p.monotone();
    zg.slabs.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        zg.slabs.push_back(make_slab(p, i, n, h, mode));
    }
    return zg;
}

double total_volume(const Ziggurat& zg) {
    CompensatedSum s;
    for (const Slab& slab : zg.slabs) s.add(slab.volume);
    return s.value();
}

GapResult gap(const Profile& p, std::int64_t n) {
    if (!p.monotone()) {
        throw stack_error(
            "gap: profile is not monotone; the telescoping identity does not "
            "apply");
    }
    if (n < 1) throw stack_error("gap: need at least one slab");
    const Ziggurat inscribed = build_ziggurat(p, n, Mode::inscribed);
    const Ziggurat circumscribed = build_ziggurat(p, n, Mode::circumscribed);
    // Slab-by-slab: inscribed slab i equals circumscribed slab i+1, so each
    // pair difference is one rung of the telescope.
    CompensatedSum diff;
    for (std::size_t i = 0; i < inscribed.slabs.size(); ++i) {
        diff.add(circumscribed.slabs[i].volume - inscribed.slabs[i].volume);
    }
    const double h = p.height() / static_cast<double>(n);
    const double r0 = p.radius(0.0);
    const double rH = p.radius(p.height());
    const double closed = pi * h * std::abs(r0 * r0 - rH * rH);
    return GapResult{diff.value(), closed};
}

double democritus_gap(const Profile& p, double z, double eps) {
    if (!(eps > 0.0)) throw profile_error("democritus_gap: eps must be > 0");
    if (!(z >= 0.0) || !(z + eps <= p.height())) {
        throw profile_error("democritus_gap: [z, z+eps] outside [0, H]");
    }
    const double r_lo = p.radius(z);
    const double r_hi = p.radius(z + eps);
    return pi * (r_lo * r_lo - r_hi * r_hi);
}

std::string to_json(const Ziggurat& zg) {
    std::ostringstream out;
    out << "{\"origin\":" << report::fmt_machine(zg.origin) << ",\"slabs\":[";
    for (std::size_t i = 0; i < zg.slabs.size(); ++i) {
        const Slab& s = zg.slabs[i];
        if (i > 0) out << ",";
        out << "{\"z_start\":" << report::fmt_machine(s.z_start)
            << ",\"thickness\":" << report::fmt_machine(s.thickness)
            << ",\"volume\":" << report::fmt_machine(s.volume) << "}";
    }
    out << "]}";
    return out.str();
}

std::string to_csv(const Ziggurat& zg) {
    std::ostringstream out;
    out << "z_start,thickness,volume\n";
    for (const Slab& s : zg.slabs) {
        out << report::fmt_machine(s.z_start) << ","
            << report::fmt_machine(s.thickness) << ","
            << report::fmt_machine(s.volume) << "\n";
    }
    return out.str();
}

} // namespace conecut
