#pragma once

#include <stdexcept>
#include <string>

namespace aads {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidIndexError : public Error {
 public:
  using Error::Error;
};

// Evaluation on a coordinate singularity (poles of the hyperspherical chart, r = 0).
class DegenerateCoordinateError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Non-finite integrand value at a quadrature node.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class ContractViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace aads
