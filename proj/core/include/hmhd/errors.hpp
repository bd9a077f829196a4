#pragma once

#include <stdexcept>
#include <string>

namespace hmhd {

// Bad user input: malformed config keys, out-of-range parameters,
// inconsistent experiment setups. Maps to exit code 2 in the CLI.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem and serialization failures. Maps to exit code 4.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a time step produces non-finite coefficients. Carries the
// simulation time of the failed step so partial output can be labeled.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double t)
      : std::runtime_error(what), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

}  // namespace hmhd
