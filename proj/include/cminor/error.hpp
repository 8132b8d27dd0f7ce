#pragma once

#include <stdexcept>
#include <string>

namespace cminor {

enum class ErrorCategory {
  parse,                // malformed input document or arguments
  precondition,         // call violates an operation's precondition
  guard_refusal,        // input larger than a configured size guard
  oracle_mismatch,      // engine disagrees with the brute-force oracle
  invariant_violation,  // internal consistency check failed
};

inline const char* category_name(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::parse: return "parse_error";
    case ErrorCategory::precondition: return "precondition_violation";
    case ErrorCategory::guard_refusal: return "guard_refusal";
    case ErrorCategory::oracle_mismatch: return "oracle_mismatch";
    case ErrorCategory::invariant_violation: return "invariant_violation";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

inline Error precondition_error(const std::string& what) {
  return Error(ErrorCategory::precondition, what);
}

inline Error guard_error(const std::string& what) {
  return Error(ErrorCategory::guard_refusal, what);
}

}  // namespace cminor
