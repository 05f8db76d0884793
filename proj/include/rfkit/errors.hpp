#pragma once

#include <stdexcept>
#include <string>

namespace rfkit {

/// Invalid numeric input; message names the offending parameter.
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Structurally inconsistent request (topology/order mismatch, bad netlist...).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root finding could not bracket the requested target.
class no_solution_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File I/O failure; message carries the path and underlying cause.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw domain_error(std::string(name) + " must be > 0, got " +
                           std::to_string(value));
    }
}

inline void require_positive(int value, const char* name) {
    if (value <= 0) {
        throw domain_error(std::string(name) + " must be > 0, got " +
                           std::to_string(value));
    }
}

} // namespace detail

} // namespace rfkit
