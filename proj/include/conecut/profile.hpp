#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "conecut/quadrature.hpp"

namespace conecut {

enum class ProfileKind { cone, cylinder, paraboloid, tabulated };

const char* to_string(ProfileKind kind);

struct ProfileSample {
    double z;
    double r;
};

// Radius profile r(z) of a solid of revolution on [0, H]. The base circle
// sits at z = 0, the apex/top at z = H:
//
//   cone        r(z) = R * (1 - z/H)
//   cylinder    r(z) = R
//   paraboloid  r(z) = R * sqrt(1 - z/H)
//   tabulated   piecewise-linear through the sample table
//
// Immutable after construction; all member functions are pure and safe to
// call concurrently.
class Profile {
public:
    static Profile cone(double base_radius, double height);
    static Profile cylinder(double base_radius, double height);
    static Profile paraboloid(double base_radius, double height);

    // Samples must be strictly increasing in z, start at z = 0 and carry
    // nonnegative radii. The height is the last sample's z.
    static Profile tabulated(std::vector<ProfileSample> samples);

    // CSV with header "z,r", one sample per line, '.' decimal, LF or CRLF.
    static Profile from_csv(std::istream& in);
    static Profile from_csv_file(const std::string& path);

    ProfileKind kind() const { return kind_; }
    double base_radius() const { return base_radius_; }
    double height() const { return height_; }

    // True iff r is non-increasing or non-decreasing on [0, H]. Known a
    // priori for the analytic kinds, scanned at construction for tables.
    bool monotone() const { return monotone_; }

    const std::vector<ProfileSample>& samples() const { return samples_; }

    // r(z); requires 0 <= z <= H.
    double radius(double z) const;

    // Cross-section area A(z) = pi * r(z)^2.
    double area(double z) const;

    // Ground-truth volume: the closed form for analytic kinds
    // (cone pi R^2 H / 3, cylinder pi R^2 H, paraboloid pi R^2 H / 2),
    // a 2^20-panel midpoint quadrature of pi r^2 for tabulated profiles.
    double oracle_volume() const;

    // Midpoint quadrature of pi r(z)^2 over [z_lo, z_hi] with the given
    // panel count; requires 0 <= z_lo <= z_hi <= H.
    double oracle_volume_between(double z_lo, double z_hi,
                                 std::int64_t panels = quad::oracle_panels) const;

    // Short human-readable form, e.g. "cone(R=1, H=2)".
    std::string describe() const;

private:
    Profile(ProfileKind kind, double base_radius, double height,
            std::vector<ProfileSample> samples, bool monotone);

    ProfileKind kind_;
    double base_radius_;
    double height_;
    std::vector<ProfileSample> samples_; // tabulated only
    bool monotone_;
};

} // namespace conecut
