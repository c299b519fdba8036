#include <doctest.h>

#include <random>

#include "binary_forms.hpp"

using k3cert::Int;
using k3cert::detail::BinaryForm;
using k3cert::detail::binary_represent;

namespace {

// direct box search over |x|,|y| <= bound
bool box_represents(const BinaryForm& f, const Int& m, long long bound) {
  for (long long x = -bound; x <= bound; ++x)
    for (long long y = -bound; y <= bound; ++y) {
      if (x == 0 && y == 0) continue;  // representations are by nonzero vectors
      if (f.eval(x, y) == m) return true;
    }
  return false;
}

}  // namespace

TEST_CASE("descent on Pell-type forms") {
  // x^2 - 3y^2: -1 is not represented (impossible mod 3), 1 and -2 are
  const BinaryForm pell{1, 0, -3};
  CHECK_FALSE(binary_represent(pell, -1).has_value());
  const auto one = binary_represent(pell, 1);
  REQUIRE(one.has_value());
  CHECK(pell.eval((*one)[0], (*one)[1]) == 1);
  const auto minus_two = binary_represent(pell, -2);
  REQUIRE(minus_two.has_value());
  CHECK(pell.eval((*minus_two)[0], (*minus_two)[1]) == -2);
}

TEST_CASE("split and degenerate forms") {
  const BinaryForm split{0, 1, 0};  // xy
  const auto w = binary_represent(split, -6);
  REQUIRE(w.has_value());
  CHECK(split.eval((*w)[0], (*w)[1]) == -6);
  REQUIRE(binary_represent(split, 0).has_value());

  const BinaryForm square_diff{1, 0, -1};  // (x-y)(x+y)
  CHECK(binary_represent(square_diff, 3).has_value());
  CHECK_FALSE(binary_represent(square_diff, 2).has_value());  // 2 is not a difference of squares

  const BinaryForm degenerate{1, 2, 1};  // (x+y)^2
  CHECK(binary_represent(degenerate, 9).has_value());
  CHECK_FALSE(binary_represent(degenerate, 8).has_value());
  CHECK(binary_represent(degenerate, 0).has_value());
}

TEST_CASE("definite forms") {
  const BinaryForm sum{1, 0, 1};
  CHECK(binary_represent(sum, 25).has_value());
  CHECK_FALSE(binary_represent(sum, 7).has_value());
  CHECK_FALSE(binary_represent(sum, -4).has_value());
  const BinaryForm neg{-2, 1, -3};
  CHECK_FALSE(binary_represent(neg, 5).has_value());
}

TEST_CASE("descent agrees with box search on random forms") {
  std::mt19937 rng(97);
  std::uniform_int_distribution<long long> coeff(-6, 6), target(-30, 30);
  for (int trial = 0; trial < 400; ++trial) {
    const BinaryForm f{coeff(rng), coeff(rng), coeff(rng)};
    const Int m = target(rng);
    const auto mine = binary_represent(f, m);
    if (mine) {
      CHECK(f.eval((*mine)[0], (*mine)[1]) == m);
    } else {
      // proven not represented: the box must agree
      CHECK_FALSE(box_represents(f, m, 25));
    }
    // and any box hit must be confirmed
    if (box_represents(f, m, 8)) CHECK(mine.has_value());
  }
}
