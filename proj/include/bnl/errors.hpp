#pragma once

#include <stdexcept>
#include <string>

namespace bnl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data: wrong sizes, missing table entries, bad party indices.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// The requested (model, scenario) combination has no vertex model.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Argument outside the domain of a closed-form expression.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The simplex hit its iteration guard. Distinct from an infeasible LP.
class LpNumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace bnl
