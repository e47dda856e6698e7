#include "conecut/profile.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "conecut/error.hpp"

namespace conecut {

namespace {

constexpr double pi = std::numbers::pi;

void check_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw profile_error(std::string(name) + " must be positive and finite");
    }
}

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

double parse_double(const std::string& token, std::size_t line_no) {
    const std::string t = trim(token);
    double value = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || t.empty()) {
        throw profile_error("profile csv: bad number '" + token + "' on line " +
                            std::to_string(line_no));
    }
    return value;
}

bool scan_monotone(const std::vector<ProfileSample>& samples) {
    bool non_increasing = true;
    bool non_decreasing = true;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].r > samples[i - 1].r) non_increasing = false;
        if (samples[i].r < samples[i - 1].r) non_decreasing = false;
    }
    return non_increasing || non_decreasing;
}

} // namespace

const char* to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::cone: return "cone";
        case ProfileKind::cylinder: return "cylinder";
        case ProfileKind::paraboloid: return "paraboloid";
        case ProfileKind::tabulated: return "tabulated";
    }
    return "?";
}

Profile::Profile(ProfileKind kind, double base_radius, double height,
                 std::vector<ProfileSample> samples, bool monotone)
    : kind_(kind),
      base_radius_(base_radius),
      height_(height),
      samples_(std::move(samples)),
      monotone_(monotone) {}

Profile Profile::cone(double base_radius, double height) {
    check_positive(base_radius, "cone radius");
    check_positive(height, "cone height");
    return Profile(ProfileKind::cone, base_radius, height, {}, true);
}

Profile Profile::cylinder(double base_radius, double height) {
    check_positive(base_radius, "cylinder radius");
    check_positive(height, "cylinder height");
    return Profile(ProfileKind::cylinder, base_radius, height, {}, true);
}

Profile Profile::paraboloid(double base_radius, double height) {
    check_positive(base_radius, "paraboloid radius");
    check_positive(height, "paraboloid height");
    return Profile(ProfileKind::paraboloid, base_radius, height, {}, true);
}

Profile Profile::tabulated(std::vector<ProfileSample> samples) {
    if (samples.size() < 2) {
        throw profile_error("tabulated profile needs at least two samples");
    }
    if (samples.front().z != 0.0) {
        throw profile_error("tabulated profile must start at z = 0");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i].z) || !std::isfinite(samples[i].r)) {
            throw profile_error("tabulated profile: non-finite sample");
        }
        if (samples[i].r < 0.0) {
            throw profile_error("tabulated profile: negative radius at z = " +
                                std::to_string(samples[i].z));
        }
        if (i > 0 && !(samples[i].z > samples[i - 1].z)) {
            throw profile_error(
                "tabulated profile: z values must be strictly increasing");
        }
    }
    const double height = samples.back().z;
    check_positive(height, "tabulated profile height");
    const double base_radius = samples.front().r;
    const bool monotone = scan_monotone(samples);
    return Profile(ProfileKind::tabulated, base_radius, height,
                   std::move(samples), monotone);
}

Profile Profile::from_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<ProfileSample> samples;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xef\xbb\xbf", 0) == 0) {
            line.erase(0, 3); // UTF-8 BOM
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw profile_error("profile csv: missing comma on line " +
                                std::to_string(line_no));
        }
        const std::string left = line.substr(0, comma);
        const std::string right = line.substr(comma + 1);
        if (!saw_header) {
            if (trim(left) != "z" || trim(right) != "r") {
                throw profile_error("profile csv: expected header 'z,r'");
            }
            saw_header = true;
            continue;
        }
        samples.push_back(
            {parse_double(left, line_no), parse_double(right, line_no)});
    }
    if (!saw_header) throw profile_error("profile csv: empty input");
    return tabulated(std::move(samples));
}

Profile Profile::from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw profile_error("cannot open profile csv: " + path);
    return from_csv(in);
}

double Profile::radius(double z) const {
    if (!(z >= 0.0) || !(z <= height_)) {
        throw profile_error("radius: z = " + std::to_string(z) +
                            " outside [0, " + std::to_string(height_) + "]");
    }
    switch (kind_) {
        case ProfileKind::cone:
            return base_radius_ * (1.0 - z / height_);
        case ProfileKind::cylinder:
            return base_radius_;
        case ProfileKind::paraboloid:
            return base_radius_ * std::sqrt(1.0 - z / height_);
        case ProfileKind::tabulated:
            break;
    }
    // First sample with z_sample >= z; z is within the table by the range
    // check above.
    const auto it = std::lower_bound(
        samples_.begin(), samples_.end(), z,
        [](const ProfileSample& s, double value) { return s.z < value; });
    if (it->z == z) return it->r;
    const ProfileSample& hi = *it;
    const ProfileSample& lo = *(it - 1);
    const double t = (z - lo.z) / (hi.z - lo.z);
    return lo.r + (hi.r - lo.r) * t;
}

double Profile::area(double z) const {
    const double r = radius(z);
    return pi * r * r;
}

double Profile::oracle_volume() const {
    const double r2h = base_radius_ * base_radius_ * height_;
    switch (kind_) {
        case ProfileKind::cone: return pi * r2h / 3.0;
        case ProfileKind::cylinder: return pi * r2h;
        case ProfileKind::paraboloid: return pi * r2h / 2.0;
        case ProfileKind::tabulated:
            return oracle_volume_between(0.0, height_, quad::oracle_panels);
    }
    return 0.0;
}

double Profile::oracle_volume_between(double z_lo, double z_hi,
                                      std::int64_t panels) const {
    if (!(z_lo >= 0.0) || !(z_hi <= height_) || !(z_lo <= z_hi)) {
        throw profile_error("oracle_volume_between: window outside [0, H]");
    }
    if (z_lo == z_hi) return 0.0;
    return quad::midpoint_blocked(
        [this](double z) {
            const double r = radius(z);
            return pi * r * r;
        },
        z_lo, z_hi, panels);
}

std::string Profile::describe() const {
    std::ostringstream out;
    out.precision(17);
    switch (kind_) {
        case ProfileKind::tabulated:
            out << "tabulated(" << samples_.size() << " samples, H=" << height_
                << ")";
            break;
        default:
            out << to_string(kind_) << "(R=" << base_radius_
                << ", H=" << height_ << ")";
            break;
    }
    return out.str();
}

} // namespace conecut
