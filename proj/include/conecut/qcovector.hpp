#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "conecut/profile.hpp"

namespace conecut {

// A pair of parallel planes: unit axial direction normal to both planes, a
// signed support offset of the first plane along that direction, and a
// modulus measuring the plane separation. modulus == 0 is legal and still
// represents two (coincident) planes; the pair is never collapsed.
struct QCovector {
    std::array<double, 3> axial;
    double support;
    double modulus;
};

// Validating constructors: |axial| must be 1 within 1e-12, modulus >= 0.
QCovector make_qcovector(const std::array<double, 3>& axial, double support,
                         double modulus);

// Covector along +z, the axis of every Profile.
QCovector axial_covector(double support, double modulus);

// 1e-12 scaled by the size of the supports involved.
double default_pasting_tol(const QCovector& a, const QCovector& b);

// Pasting composition: legal when both covectors share their direction and
// the final plane of a coincides with the starting plane of b within tol.
// The fused cutter keeps a's direction and support and adds the moduli.
// Throws pasting_error (carrying the measured gap) when the planes do not
// meet, covector_error on direction mismatch.
QCovector compose(const QCovector& a, const QCovector& b, double tol);
QCovector compose(const QCovector& a, const QCovector& b);

struct SliceResult {
    double volume;     // integral of pi r(z)^2 over [support, support+modulus]
    double lower_area; // A(support): circle exposed on the first plane
    double upper_area; // A(support+modulus): circle exposed on the second
};

// Volume cut out of the solid by an axis-aligned cutter, via the
// bin-restricted oracle quadrature. A zero-modulus cutter removes no
// volume but still exposes two (equal) circles. Only cutters along +z are
// accepted; the slice must lie inside [0, H].
SliceResult slice_volume(const Profile& p, const QCovector& c);

// For each eps in a strictly decreasing schedule (eps >= 1e-8 * H), the
// slice volume over [z, z+eps] divided by eps. The entries approach
// A(z) = pi r(z)^2 at first order.
std::vector<double> density_limit(const Profile& p, double z,
                                  std::span<const double> eps_sequence);

// {axial:[x,y,z], support, modulus}, 17-significant-digit floats.
std::string to_json(const QCovector& c);

} // namespace conecut
