#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke a precondition that is not about sizes (asymmetric input,
// non-symplectic blocks, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int required_terms)
      : std::runtime_error(what), required_terms_(required_terms) {}
  int required_terms() const { return required_terms_; }

 private:
  int required_terms_;
};

}  // namespace siegel
