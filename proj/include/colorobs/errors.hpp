#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace colorobs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A graph description failed one or more structural invariants.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// An exponential search or enumeration was refused because it exceeds its cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Raised when a theorem-level invariant fails. Always a bug.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

// Invalid HMM parameters or an unsupported Markov chain structure.
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace colorobs
