#pragma once

#include <stdexcept>
#include <string>

namespace subfvs {

// Bad user-supplied data (unknown vertex id, malformed file, ...).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A rule or operation was invoked although its precondition does not hold.
struct rule_error : std::runtime_error {
    explicit rule_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A documented invariant of a value was found violated.
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A bug: some internal consistency check failed (e.g. an unsafe lift).
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace subfvs
