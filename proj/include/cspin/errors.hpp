#pragma once

#include <stdexcept>
#include <string>

namespace cspin {

// Request exceeds the exact-diagonalization size cap.
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical invariant was violated at run time (bad norm, tolerance breach).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Scenario configuration rejected; `field` is the dotted path of the bad entry.
struct ConfigError : std::runtime_error {
  ConfigError(std::string field_path, const std::string& message)
      : std::runtime_error(field_path + ": " + message), field(std::move(field_path)) {}
  std::string field;
};

}  // namespace cspin
