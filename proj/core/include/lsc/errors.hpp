#pragma once

#include <stdexcept>
#include <string>

namespace lsc {

/// Invalid physical input or out-of-domain argument.
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Iterative solver failed to converge; message carries diagnostics.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or schema-violating run configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lsc
