#pragma once

#include <array>
#include <optional>

#include "k3cert/numeric.hpp"

namespace k3cert::detail {

// q(x,y) = a x^2 + b xy + c y^2.
struct BinaryForm {
  Int a, b, c;
  Int disc() const { return b * b - 4 * a * c; }
  Int eval(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }
  bool operator==(const BinaryForm&) const = default;
};

// Exact decision of q(x,y) = m over the integers, with a witness when one
// exists. Definite and degenerate forms are decided directly; indefinite
// forms with square discriminant factor into linear forms; indefinite forms
// with non-square discriminant are decided by reduction-cycle descent.
std::optional<std::array<Int, 2>> binary_represent(const BinaryForm& f, const Int& m);

}  // namespace k3cert::detail
