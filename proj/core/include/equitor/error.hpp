#pragma once

#include <stdexcept>
#include <string>

namespace equitor {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user input.
class InputError : public Error {
 public:
  using Error::Error;
};

// Input is well formed but fails a mathematical precondition.
class ValidationError : public Error {
 public:
  ValidationError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

// An internal consistency assertion failed; indicates a bug, never bad input.
class SelfCheckError : public Error {
 public:
  using Error::Error;
};

}  // namespace equitor
