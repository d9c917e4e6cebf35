#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corrlab {

// Argument outside the mathematical domain of a function (x <= 0 for log_gamma, a <= -1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller misuse: wrong field tag, index out of range, mismatched shapes.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data violating a type invariant (angle outside (0, pi), non-unit diagonal, ...).
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Cholesky pivot fell to or below the floor. `index()` is the 1-based order of the
// leading minor that failed.
class NotPositiveDefinite : public std::runtime_error {
 public:
  explicit NotPositiveDefinite(std::size_t index)
      : std::runtime_error("matrix is not positive definite: leading minor " +
                           std::to_string(index) + " failed"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Division by a (numerically) vanishing partial variance or a partial correlation of modulus 1.
class Degenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace corrlab
