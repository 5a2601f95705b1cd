#pragma once

#include <stdexcept>
#include <string>

namespace divlab {

// Coarse split used by the CLI exit-code contract: validation failures
// (bad inputs, parameter-region violations) versus numerical failures
// (iteration budgets, pivot breakdown).
enum class ErrorKind {
  validation,
  numerical,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

inline Error validation_error(const std::string& code, const std::string& what) {
  return Error(ErrorKind::validation, code, what);
}

inline Error numerical_error(const std::string& code, const std::string& what) {
  return Error(ErrorKind::numerical, code, what);
}

}  // namespace divlab
