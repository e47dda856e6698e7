#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "conecut/profile.hpp"

namespace conecut {

// One cylinder of a stack.
struct Slab {
    double z_start;   // axial position of the lower plane
    double thickness; // > 0
    double volume;    // >= 0

    double effective_radius() const; // sqrt(volume / (pi * thickness))
};

enum class Mode { inscribed, circumscribed };

const char* to_string(Mode mode);

// Contiguous ordered stack of slabs. Consecutive slabs satisfy the pasting
// condition z_start(i+1) = z_start(i) + thickness(i) up to
// 1e-12 * total_thickness.
struct Ziggurat {
    double origin = 0.0;
    std::vector<Slab> slabs;

    // False when the per-slab endpoint min/max radii are not guaranteed to
    // bracket the profile (non-monotone profiles).
    bool rigorous = true;

    std::size_t slab_count() const { return slabs.size(); }
    double total_thickness() const;
};

bool is_contiguous(const Ziggurat& zg, double abs_tol);
bool has_uniform_thickness(const Ziggurat& zg, double abs_tol);

// n equal-thickness slabs spanning [0, H]. Slab i covers
// [i*H/n, (i+1)*H/n]; its radius is the min (inscribed) or max
// (circumscribed) of the profile radius at the two slab planes.
Ziggurat build_ziggurat(const Profile& p, std::int64_t n, Mode mode);

// Reference implementation of build_ziggurat; bit-identical output.
Ziggurat build_ziggurat_serial(const Profile& p, std::int64_t n, Mode mode);

// Sum of slab volumes, left-to-right, compensated.
double total_volume(const Ziggurat& zg);

struct GapResult {
    // Circumscribed minus inscribed volume, subtracted slab by slab so the
    // telescoping cancellation survives in floating point.
    double by_subtraction;
    // pi * (H/n) * |r(0)^2 - r(H)^2|: the one extra slice.
    double closed_form;
};

// Difference between the circumscribed and inscribed stacks at n slabs.
// Refuses non-monotone profiles; the telescoping identity needs per-slab
// extrema at the slab planes.
GapResult gap(const Profile& p, std::int64_t n);

// Area mismatch pi * (r(z)^2 - r(z+eps)^2) between the two circles exposed
// by a cutter of thickness eps at height z. Signed; positive for
// non-increasing profiles. Zero for the cylinder at any z and eps.
double democritus_gap(const Profile& p, double z, double eps);

// {origin, slabs:[{z_start, thickness, volume}]}, 17-significant-digit
// decimal floats.
std::string to_json(const Ziggurat& zg);

// Header "z_start,thickness,volume", one row per slab, LF line endings.
std::string to_csv(const Ziggurat& zg);

} // namespace conecut
