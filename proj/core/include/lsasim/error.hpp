#pragma once

#include <stdexcept>
#include <string>

namespace lsasim {

/// Broad failure classes. The CLI maps each one to a distinct exit code.
enum class ErrorCategory {
  Config = 2,      // bad or missing configuration
  Input = 3,       // unreadable or schema-violating input data
  Simulation = 4,  // infeasible scenario or failure inside a simulated day
  Io = 5,          // filesystem trouble while writing outputs
  Validation = 6,  // manifest digests or artifacts do not check out
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  [[nodiscard]] ErrorCategory category() const noexcept { return category_; }
  [[nodiscard]] int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
};

[[nodiscard]] inline const char* category_name(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::Config: return "config";
    case ErrorCategory::Input: return "input";
    case ErrorCategory::Simulation: return "simulation";
    case ErrorCategory::Io: return "io";
    case ErrorCategory::Validation: return "validation";
  }
  return "unknown";
}

}  // namespace lsasim
