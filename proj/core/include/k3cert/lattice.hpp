#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "k3cert/numeric.hpp"

namespace k3cert {

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

/// An even integral lattice presented by the Gram matrix of a fixed basis.
/// Instances are immutable after construction; every operation on them is
/// pure and safe to call concurrently.
class Lattice {
 public:
  /// Validates the invariants (square symmetric Gram, even diagonal,
  /// rank >= 1) and throws ValidationError naming the violated one.
  static LatticePtr make(IntMat gram, std::string name = "");

  int rank() const { return rank_; }
  const IntMat& gram() const { return gram_; }
  const std::string& name() const { return name_; }

  bool same_gram(const Lattice& other) const { return gram_ == other.gram_; }

 private:
  Lattice(IntMat gram, std::string name, int rank)
      : gram_(std::move(gram)), name_(std::move(name)), rank_(rank) {}

  IntMat gram_;
  std::string name_;
  int rank_;
};

/// Orthogonal direct sum; basis of `a` first.
LatticePtr direct_sum(const LatticePtr& a, const LatticePtr& b, std::string name = "");

/// Integer class in a fixed lattice basis.
class DivisorClass {
 public:
  DivisorClass(LatticePtr lattice, IntVec coords);

  const Lattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const IntVec& coords() const { return coords_; }
  bool is_zero() const;

  DivisorClass operator+(const DivisorClass& other) const;
  DivisorClass operator-(const DivisorClass& other) const;
  DivisorClass operator-() const;
  DivisorClass operator*(const Int& scalar) const;
  bool operator==(const DivisorClass& other) const;
  bool operator!=(const DivisorClass& other) const { return !(*this == other); }

 private:
  LatticePtr lattice_;
  IntVec coords_;
};

DivisorClass zero_class(const LatticePtr& lattice);
DivisorClass basis_class(const LatticePtr& lattice, int index);

struct SignatureTriple {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const SignatureTriple&) const = default;
};

/// Intersection number v.w evaluated through the Gram matrix.
Int pair(const DivisorClass& v, const DivisorClass& w);
Int square(const DivisorClass& v);

/// Exact inertia counts, via congruence diagonalization over the rationals.
SignatureTriple signature(const Lattice& lattice);

/// Determinant of the Gram matrix.
Int discriminant(const Lattice& lattice);

/// True iff the coordinate gcd is 1. Throws InvalidInputError on the zero class.
bool is_primitive(const DivisorClass& v);

struct DivisibilityReport {
  bool v_in_two_lambda = false;
  // Smallest n >= 2 with v - w in n*Lambda, when one exists. A zero
  // difference lies in n*Lambda for every n and is reported with n = 2.
  std::optional<Int> difference_divisor;
  bool clean() const { return !v_in_two_lambda && !difference_divisor; }
};

DivisibilityReport divisibility_violations(const DivisorClass& v, const DivisorClass& w);

void require_same_lattice(const DivisorClass& v, const DivisorClass& w);

}  // namespace k3cert
