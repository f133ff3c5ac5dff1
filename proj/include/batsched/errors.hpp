#pragma once

#include <stdexcept>
#include <string>

namespace batsched {

// Raised when no assignment can satisfy the deadline, even with every task
// at its fastest design point.
class DeadlineInfeasible : public std::runtime_error {
 public:
  DeadlineInfeasible() : std::runtime_error("deadline cannot be met") {}
  explicit DeadlineInfeasible(const std::string& detail)
      : std::runtime_error("deadline cannot be met: " + detail) {}
};

// A single allocation window left some task without a finite suitability.
class WindowInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph file / profile CSV. The message carries line or field context.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace batsched
