#pragma once

#include <stdexcept>
#include <string>

namespace nilhom {

/// Bad input data: non-hermitian samples, lost periodicity, grid constraints.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative solver did not reach its tolerance.
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Unparseable configuration or missing referenced file.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nilhom
