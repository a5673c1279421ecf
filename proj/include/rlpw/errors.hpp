#pragma once

#include <stdexcept>

namespace rlpw {

// Argument outside an operation's documented domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exact scale-power guard tripped (|j| beyond the configured bound).
class OverflowGuardError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A quadrature oracle could not reach its tolerance within budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rlpw
