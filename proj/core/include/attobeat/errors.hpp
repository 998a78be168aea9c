#pragma once

#include <stdexcept>
#include <string>

namespace attobeat {

// Argument outside the domain of an operation (non-positive wavelength,
// empty window, degenerate thresholds, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Inputs whose shapes do not fit together (mismatched grids, vector sizes).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative solver stopped without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Time propagation produced a non-finite or exploding state.
class PropagationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario file problem, located by line (0 if not line-specific) and key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string key = {})
      : std::runtime_error(format(what, line, key)), line_(line), key_(std::move(key)) {}
  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  static std::string format(const std::string& what, int line, const std::string& key) {
    std::string s;
    if (line > 0) s += "line " + std::to_string(line) + ": ";
    if (!key.empty()) s += "'" + key + "': ";
    return s + what;
  }
  int line_;
  std::string key_;
};

}  // namespace attobeat
