#pragma once

#include <stdexcept>
#include <string>

namespace lowreg {

/// Raised when a trajectory leaves the admissible range (non-finite values or
/// the H^1 growth guard fires). Maps to CLI exit code 3.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Raised when a study configuration is inconsistent. Maps to exit code 4.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lowreg
