#pragma once

#include <stdexcept>
#include <string>

namespace conecut {

// Base class for everything the library throws. The CLI maps these to
// exit code 1.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad profile construction or out-of-range evaluation.
class profile_error : public error {
public:
    using error::error;
};

// Structural violation in a cylinder stack (odd slab count, unequal
// thickness, target scale not reachable, ...).
class stack_error : public error {
public:
    using error::error;
};

// Invalid covector or a covector operation outside its domain.
class covector_error : public error {
public:
    using error::error;
};

// Composition refused: the final plane of one covector does not meet the
// starting plane of the other. Carries the measured gap.
class pasting_error : public covector_error {
public:
    pasting_error(const std::string& what, double gap)
        : covector_error(what), gap_(gap) {}

    double gap() const noexcept { return gap_; }

private:
    double gap_;
};

} // namespace conecut
