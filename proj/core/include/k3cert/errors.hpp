#pragma once

#include <stdexcept>
#include <string>

namespace k3cert {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands belong to different lattices (or wrong dimensions).
struct LatticeMismatchError : Error {
  using Error::Error;
};

struct InvalidInputError : Error {
  using Error::Error;
};

struct InvalidAmpleError : Error {
  using Error::Error;
};

struct InvalidRankError : Error {
  using Error::Error;
};

struct UnsupportedRankError : Error {
  using Error::Error;
};

// The queried lattice is not one the operation recognizes.
struct InvalidLatticeError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct NotK3LatticeError : Error {
  using Error::Error;
};

struct HodgeIndexViolationError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(int line_, std::string field_, const std::string& what_)
      : Error("parse error at line " + std::to_string(line_) + ", field '" + field_ + "': " + what_),
        line(line_),
        field(std::move(field_)) {}
  int line;
  std::string field;
};

struct ValidationError : Error {
  ValidationError(std::string invariant_, const std::string& what_)
      : Error("validation error [" + invariant_ + "]: " + what_), invariant(std::move(invariant_)) {}
  std::string invariant;
};

}  // namespace k3cert
