#pragma once

#include <stdexcept>
#include <string>

namespace lbf {

/// Thrown by vee() when the argument is not skew-symmetric.
struct NotSkew : std::invalid_argument {
    explicit NotSkew(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown by solve_tilt_angle() when the rotation axis is undefined
/// (reference thrust axis anti-parallel to the demanded force).
struct DegenerateAxis : std::domain_error {
    explicit DegenerateAxis(const std::string& what) : std::domain_error(what) {}
};

/// Thrown by build_desired_rotation() when the heading reference is
/// parallel to the desired thrust axis.
struct DegenerateHeading : std::domain_error {
    explicit DegenerateHeading(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when a trajectory is sampled outside its time span.
struct OutOfRange : std::out_of_range {
    explicit OutOfRange(const std::string& what) : std::out_of_range(what) {}
};

/// Thrown for malformed scenario configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lbf
