#pragma once

#include <stdexcept>
#include <string>

namespace zfropm {

/// Error taxonomy mirrored by the CLI exit codes: config 2, I/O 3, schema 4,
/// non-convergence 5.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

struct NonConvergenceError : std::runtime_error {
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zfropm
