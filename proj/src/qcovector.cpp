#include "conecut/qcovector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conecut/error.hpp"
#include "conecut/report.hpp"

namespace conecut {

namespace {

constexpr double unit_tol = 1e-12;

double dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

void check_valid(const QCovector& c, const char* who) {
    const double norm = std::sqrt(dot(c.axial, c.axial));
    if (std::abs(norm - 1.0) > unit_tol) {
        throw covector_error(std::string(who) + ": axial vector is not unit");
    }
    if (!(c.modulus >= 0.0)) {
        throw covector_error(std::string(who) + ": modulus must be >= 0");
    }
}

} // namespace

QCovector make_qcovector(const std::array<double, 3>& axial, double support,
                         double modulus) {
    QCovector c{axial, support, modulus};
    check_valid(c, "make_qcovector");
    return c;
}

QCovector axial_covector(double support, double modulus) {
    return make_qcovector({0.0, 0.0, 1.0}, support, modulus);
}

double default_pasting_tol(const QCovector& a, const QCovector& b) {
    const double scale = std::max({1.0, std::abs(a.support) + a.modulus,
                                   std::abs(b.support)});
    return 1e-12 * scale;
}

QCovector compose(const QCovector& a, const QCovector& b, double tol) {
    check_valid(a, "compose");
    check_valid(b, "compose");
    if (dot(a.axial, b.axial) < 1.0 - unit_tol) {
        throw covector_error("compose: axial directions differ");
    }
    const double meeting = a.support + a.modulus; // final plane of a
    const double gap = std::abs(b.support - meeting);
    if (gap > tol) {
        std::ostringstream msg;
        msg << "compose: pasting violation, planes miss by " << gap;
        throw pasting_error(msg.str(), gap);
    }
    return QCovector{a.axial, a.support, a.modulus + b.modulus};
}

QCovector compose(const QCovector& a, const QCovector& b) {
    return compose(a, b, default_pasting_tol(a, b));
}

SliceResult slice_volume(const Profile& p, const QCovector& c) {
    check_valid(c, "slice_volume");
    if (dot(c.axial, {0.0, 0.0, 1.0}) < 1.0 - unit_tol) {
        throw covector_error(
            "slice_volume: only cutters along the +z axis act on profiles");
    }
    const double lo = c.support;
    const double hi = c.support + c.modulus;
    if (!(lo >= 0.0) || !(hi <= p.height())) {
        throw covector_error("slice_volume: slice outside [0, H]");
    }
    SliceResult result;
    result.lower_area = p.area(lo);
    result.upper_area = p.area(hi);
    result.volume = (c.modulus == 0.0) ? 0.0 : p.oracle_volume_between(lo, hi);
    return result;
}

std::vector<double> density_limit(const Profile& p, double z,
                                  std::span<const double> eps_sequence) {
    const double eps_floor = 1e-8 * p.height();
    for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
        if (!(eps_sequence[i] >= eps_floor)) {
            throw covector_error("density_limit: eps below 1e-8 * H");
        }
        if (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1])) {
            throw covector_error(
                "density_limit: eps schedule must be strictly decreasing");
        }
        if (!(z >= 0.0) || !(z + eps_sequence[i] <= p.height())) {
            throw covector_error("density_limit: window outside [0, H]");
        }
    }
    std::vector<double> densities;
    densities.reserve(eps_sequence.size());
    for (const double eps : eps_sequence) {
        const SliceResult slice = slice_volume(p, axial_covector(z, eps));
        densities.push_back(slice.volume / eps);
    }
    return densities;
}

std::string to_json(const QCovector& c) {
    std::ostringstream out;
    out << "{\"axial\":[" << report::fmt_machine(c.axial[0]) << ","
        << report::fmt_machine(c.axial[1]) << ","
        << report::fmt_machine(c.axial[2])
        << "],\"support\":" << report::fmt_machine(c.support)
        << ",\"modulus\":" << report::fmt_machine(c.modulus) << "}";
    return out.str();
}

} // namespace conecut
