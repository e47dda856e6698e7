#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "conecut/error.hpp"
#include "conecut/profile.hpp"
#include "conecut/qcovector.hpp"
#include "conecut/rg.hpp"
#include "conecut/ziggurat.hpp"
#include "test_support.hpp"

using conecut::axial_covector;
using conecut::compose;
using conecut::density_limit;
using conecut::make_qcovector;
using conecut::Profile;
using conecut::QCovector;
using conecut::slice_volume;
using testsupport::rel_diff;

namespace {

constexpr double pi = std::numbers::pi;

// Antiderivative oracle for the cone slice: pi * integral of (1-z)^2.
double cone_slice(double a, double b) {
    const auto F = [](double z) {
        const double u = 1.0 - z;
        return -u * u * u / 3.0;
    };
    return pi * (F(b) - F(a));
}

std::array<double, 3> random_unit(std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::array<double, 3> v{gauss(rng), gauss(rng), gauss(rng)};
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / norm, v[1] / norm, v[2] / norm};
}

} // namespace

TEST_CASE("construction validates the axial vector and modulus") {
    CHECK_THROWS_AS(make_qcovector({0.0, 0.0, 2.0}, 0.0, 1.0),
                    conecut::covector_error);
    CHECK_THROWS_AS(make_qcovector({0.0, 0.0, 1.0}, 0.0, -0.5),
                    conecut::covector_error);
    const QCovector zero_width = axial_covector(0.3, 0.0);
    CHECK(zero_width.modulus == 0.0); // still a pair of planes
}

TEST_CASE("pasting composition fuses adjacent cutters") {
    const QCovector a = axial_covector(0.0, 0.25);
    const QCovector b = axial_covector(0.25, 0.5);
    const QCovector c = compose(a, b, 1e-9);
    CHECK(c.support == 0.0);
    CHECK(c.modulus == 0.75);
    CHECK(c.axial[2] == 1.0);
}

TEST_CASE("pasting violations report the gap") {
    const QCovector a = axial_covector(0.0, 0.25);
    const QCovector b = axial_covector(0.3, 0.5);
    try {
        compose(a, b, 1e-9);
        FAIL("composition should have thrown");
    } catch (const conecut::pasting_error& e) {
        CHECK(e.gap() == doctest::Approx(0.05).epsilon(1e-12));
    }
}

TEST_CASE("direction mismatch is refused") {
    const QCovector a = axial_covector(0.0, 0.25);
    const QCovector x = make_qcovector({1.0, 0.0, 0.0}, 0.25, 0.5);
    CHECK_THROWS_AS(compose(a, x, 1e-9), conecut::covector_error);
    const QCovector tilted =
        make_qcovector({std::sin(1e-5), 0.0, std::cos(1e-5)}, 0.25, 0.5);
    CHECK_THROWS_AS(compose(a, tilted, 1e-9), conecut::covector_error);
    // A tilt inside the 1e-12 direction tolerance still composes.
    const QCovector barely =
        make_qcovector({std::sin(1e-7), 0.0, std::cos(1e-7)}, 0.25, 0.5);
    CHECK(compose(a, barely, 1e-9).modulus == 0.75);
}

TEST_CASE("zero-modulus covectors are two-sided identities") {
    const QCovector a = axial_covector(0.4, 0.35);
    const QCovector right = axial_covector(0.75, 0.0);
    const QCovector left = axial_covector(0.4, 0.0);

    const QCovector ar = compose(a, right);
    CHECK(ar.support == a.support);
    CHECK(ar.modulus == a.modulus);

    const QCovector la = compose(left, a);
    CHECK(la.support == a.support);
    CHECK(la.modulus == a.modulus);
}

TEST_CASE("composition is associative") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> offset(-3.0, 3.0);
    std::uniform_real_distribution<double> width(0.0, 2.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::array<double, 3> axis = random_unit(rng);
        const double s0 = offset(rng);
        const double m0 = width(rng);
        const double m1 = width(rng);
        const double m2 = width(rng);
        const QCovector a = make_qcovector(axis, s0, m0);
        const QCovector b = make_qcovector(axis, s0 + m0, m1);
        const QCovector c = make_qcovector(axis, (s0 + m0) + m1, m2);

        const QCovector left = compose(compose(a, b), c);
        const QCovector right = compose(a, compose(b, c));
        CHECK(left.support == right.support);
        CHECK(std::abs(left.modulus - right.modulus) < 1e-12);
        for (int i = 0; i < 3; ++i) CHECK(left.axial[i] == right.axial[i]);

        // Modulus additivity, exact up to the one rounding of the sum.
        CHECK(compose(a, b).modulus == a.modulus + b.modulus);
    }
}

TEST_CASE("slab covectors compose the way coarse graining merges") {
    std::mt19937 rng(654);
    for (int trial = 0; trial < 20; ++trial) {
        const conecut::Ziggurat stack = testsupport::random_stack(rng, 32);
        const conecut::Ziggurat merged = conecut::coarse_grain(stack);
        for (std::size_t i = 0; i + 1 < stack.slab_count(); i += 2) {
            const QCovector lo =
                axial_covector(stack.slabs[i].z_start, stack.slabs[i].thickness);
            const QCovector hi = axial_covector(stack.slabs[i + 1].z_start,
                                                stack.slabs[i + 1].thickness);
            const QCovector fused = compose(lo, hi);
            const conecut::Slab& pair = merged.slabs[i / 2];
            CHECK(std::abs(fused.support - pair.z_start) < 1e-12);
            CHECK(std::abs(fused.modulus - pair.thickness) < 1e-12);
        }
    }
}

TEST_CASE("slice volume of the whole cone is the cone volume") {
    const Profile cone = Profile::cone(1.0, 1.0);
    const conecut::SliceResult whole =
        slice_volume(cone, axial_covector(0.0, 1.0));
    CHECK(std::abs(whole.volume - pi / 3.0) < 1e-10);
    CHECK(whole.lower_area == cone.area(0.0));
    CHECK(whole.upper_area == 0.0);
}

TEST_CASE("zero-modulus slices expose two equal circles") {
    const Profile cone = Profile::cone(1.0, 1.0);
    const conecut::SliceResult cut =
        slice_volume(cone, axial_covector(0.5, 0.0));
    CHECK(cut.volume == 0.0);
    CHECK(cut.lower_area == cone.area(0.5));
    CHECK(cut.upper_area == cone.area(0.5));
}

TEST_CASE("thin cone slices obey the mean-value bracket") {
    const Profile cone = Profile::cone(1.0, 1.0);
    const conecut::SliceResult thin =
        slice_volume(cone, axial_covector(0.5, 0.01));
    const double density = thin.volume / 0.01;
    CHECK(density <= pi * 0.25);
    CHECK(density >= pi * 0.49 * 0.49);
    CHECK(rel_diff(thin.volume, cone_slice(0.5, 0.51)) < 1e-10);
}

TEST_CASE("slice volume rejects bad cutters") {
    const Profile cone = Profile::cone(1.0, 1.0);
    CHECK_THROWS_AS(slice_volume(cone, axial_covector(-0.1, 0.2)),
                    conecut::covector_error);
    CHECK_THROWS_AS(slice_volume(cone, axial_covector(0.8, 0.3)),
                    conecut::covector_error);
    CHECK_THROWS_AS(
        slice_volume(cone, make_qcovector({1.0, 0.0, 0.0}, 0.2, 0.1)),
        conecut::covector_error);
}

TEST_CASE("density limit approaches the cross-section area") {
    const Profile cone = Profile::cone(1.0, 1.0);
    const std::vector<double> eps{1e-2, 5e-3, 2.5e-3};
    const std::vector<double> densities = density_limit(cone, 0.5, eps);
    REQUIRE(densities.size() == 3);
    CHECK(rel_diff(densities[0], cone_slice(0.5, 0.51) / 1e-2) < 1e-10);

    // First-order convergence: the error roughly halves per halving.
    double prev_err = std::abs(densities[0] - pi / 4.0);
    for (std::size_t i = 1; i < densities.size(); ++i) {
        const double err = std::abs(densities[i] - pi / 4.0);
        const double ratio = prev_err / err;
        CHECK(ratio > 1.9);
        CHECK(ratio < 2.1);
        prev_err = err;
    }
}

TEST_CASE("density limit of the cylinder is flat") {
    const Profile cyl = Profile::cylinder(1.5, 2.0);
    const std::vector<double> eps{1e-1, 1e-2, 1e-3};
    for (const double d : density_limit(cyl, 0.5, eps)) {
        CHECK(rel_diff(d, pi * 1.5 * 1.5) < 1e-13);
    }
}

TEST_CASE("density limit validates the schedule") {
    const Profile cone = Profile::cone(1.0, 1.0);
    const std::vector<double> increasing{1e-3, 1e-2};
    CHECK_THROWS_AS(density_limit(cone, 0.5, increasing),
                    conecut::covector_error);
    const std::vector<double> too_small{1e-10};
    CHECK_THROWS_AS(density_limit(cone, 0.5, too_small),
                    conecut::covector_error);
    const std::vector<double> out_of_range{0.6};
    CHECK_THROWS_AS(density_limit(cone, 0.5, out_of_range),
                    conecut::covector_error);
}

TEST_CASE("covector serialization") {
    CHECK(conecut::to_json(axial_covector(0.25, 0.5)) ==
          "{\"axial\":[0,0,1],\"support\":0.25,\"modulus\":0.5}");
}
