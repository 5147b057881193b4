#pragma once

#include <stdexcept>
#include <string>

namespace wlab {

// Bad arguments: dimension mismatches, divisibility failures, malformed files.
struct invalid_input : std::invalid_argument {
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Instance exceeds a configured size cap.
struct resource_limit : std::runtime_error {
    explicit resource_limit(const std::string& what) : std::runtime_error(what) {}
};

// Solver configuration is unusable (e.g. time step violates the stability bound).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical blow-up detected at runtime (divergent rollout, non-finite value).
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wlab
