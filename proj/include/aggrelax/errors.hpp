#pragma once

#include <stdexcept>
#include <string>

namespace aggrelax {

/// Invalid parameters or malformed input (bad grid, bad config, bad measure).
/// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Runtime numerical failure (CFL violation, fixed-point non-convergence).
/// The CLI maps this to exit code 3.
class NumericsError : public std::runtime_error {
public:
    explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace aggrelax
