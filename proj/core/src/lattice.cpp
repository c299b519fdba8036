#include "k3cert/lattice.hpp"

#include <utility>

#include "k3cert/errors.hpp"

namespace k3cert {

LatticePtr Lattice::make(IntMat gram, std::string name) {
  const int r = static_cast<int>(gram.size());
  if (r < 1) throw ValidationError("rank >= 1", "empty Gram matrix");
  for (const auto& row : gram)
    if (static_cast<int>(row.size()) != r)
      throw ValidationError("gram dimensions equal rank", "Gram matrix is not square");
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (gram[i][j] != gram[j][i])
        throw ValidationError("gram is symmetric",
                              "entries (" + std::to_string(i) + "," + std::to_string(j) + ") differ");
  for (int i = 0; i < r; ++i)
    if (gram[i][i] % 2 != 0)
      throw ValidationError("even diagonal", "diagonal entry " + std::to_string(i) + " is odd");
  return LatticePtr(new Lattice(std::move(gram), std::move(name), r));
}

LatticePtr direct_sum(const LatticePtr& a, const LatticePtr& b, std::string name) {
  const int ra = a->rank();
  const int rb = b->rank();
  IntMat gram(ra + rb, IntVec(ra + rb, 0));
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ra; ++j) gram[i][j] = a->gram()[i][j];
  for (int i = 0; i < rb; ++i)
    for (int j = 0; j < rb; ++j) gram[ra + i][ra + j] = b->gram()[i][j];
  if (name.empty()) name = a->name() + "+" + b->name();
  return Lattice::make(std::move(gram), std::move(name));
}

DivisorClass::DivisorClass(LatticePtr lattice, IntVec coords)
    : lattice_(std::move(lattice)), coords_(std::move(coords)) {
  if (!lattice_) throw InvalidInputError("divisor class without a lattice");
  if (static_cast<int>(coords_.size()) != lattice_->rank())
    throw LatticeMismatchError("coordinate vector length " + std::to_string(coords_.size()) +
                               " does not match lattice rank " + std::to_string(lattice_->rank()));
}

bool DivisorClass::is_zero() const {
  for (const Int& c : coords_)
    if (c != 0) return false;
  return true;
}

DivisorClass DivisorClass::operator+(const DivisorClass& other) const {
  require_same_lattice(*this, other);
  IntVec c = coords_;
  for (size_t i = 0; i < c.size(); ++i) c[i] += other.coords_[i];
  return DivisorClass(lattice_, std::move(c));
}

DivisorClass DivisorClass::operator-(const DivisorClass& other) const {
  require_same_lattice(*this, other);
  IntVec c = coords_;
  for (size_t i = 0; i < c.size(); ++i) c[i] -= other.coords_[i];
  return DivisorClass(lattice_, std::move(c));
}

DivisorClass DivisorClass::operator-() const {
  IntVec c = coords_;
  for (Int& x : c) x = -x;
  return DivisorClass(lattice_, std::move(c));
}

DivisorClass DivisorClass::operator*(const Int& scalar) const {
  IntVec c = coords_;
  for (Int& x : c) x *= scalar;
  return DivisorClass(lattice_, std::move(c));
}

bool DivisorClass::operator==(const DivisorClass& other) const {
  return lattice_->same_gram(*other.lattice_) && coords_ == other.coords_;
}

DivisorClass zero_class(const LatticePtr& lattice) {
  return DivisorClass(lattice, IntVec(lattice->rank(), 0));
}

DivisorClass basis_class(const LatticePtr& lattice, int index) {
  IntVec c(lattice->rank(), 0);
  c.at(index) = 1;
  return DivisorClass(lattice, std::move(c));
}

void require_same_lattice(const DivisorClass& v, const DivisorClass& w) {
  if (v.lattice_ptr() == w.lattice_ptr()) return;
  if (v.lattice().same_gram(w.lattice())) return;
  throw LatticeMismatchError("classes belong to different lattices");
}

Int pair(const DivisorClass& v, const DivisorClass& w) {
  require_same_lattice(v, w);
  const IntMat& g = v.lattice().gram();
  const int r = v.lattice().rank();
  Int result = 0;
  for (int i = 0; i < r; ++i) {
    if (v.coords()[i] == 0) continue;
    Int row = 0;
    for (int j = 0; j < r; ++j) row += g[i][j] * w.coords()[j];
    result += v.coords()[i] * row;
  }
  return result;
}

Int square(const DivisorClass& v) { return pair(v, v); }

SignatureTriple signature(const Lattice& lattice) {
  const RatVec diag = symmetric_diagonalize(to_rational(lattice.gram()));
  SignatureTriple s;
  for (const Rat& d : diag) {
    if (d > 0)
      ++s.positive;
    else if (d < 0)
      ++s.negative;
    else
      ++s.zero;
  }
  return s;
}

Int discriminant(const Lattice& lattice) { return determinant(lattice.gram()); }

bool is_primitive(const DivisorClass& v) {
  if (v.is_zero()) throw InvalidInputError("primitivity of the zero class is undefined");
  return gcd_vector(v.coords()) == 1;
}

DivisibilityReport divisibility_violations(const DivisorClass& v, const DivisorClass& w) {
  require_same_lattice(v, w);
  DivisibilityReport report;
  report.v_in_two_lambda = true;
  for (const Int& c : v.coords())
    if (c % 2 != 0) {
      report.v_in_two_lambda = false;
      break;
    }
  const DivisorClass diff = v - w;
  const Int g = gcd_vector(diff.coords());
  if (g == 0) {
    report.difference_divisor = 2;  // zero difference lies in every n*Lambda
  } else if (g >= 2) {
    report.difference_divisor = g;
  }
  return report;
}

}  // namespace k3cert
