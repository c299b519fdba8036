#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace k3cert {

// Every quantity derived from a Gram matrix is computed in exact arithmetic:
// arbitrary-precision integers and rationals, no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using IntMat = std::vector<std::vector<Int>>;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<std::vector<Rat>>;

IntMat identity_matrix(int n);
IntMat matrix_product(const IntMat& a, const IntMat& b);
IntMat matrix_transpose(const IntMat& a);
IntVec matrix_apply(const IntMat& a, const IntVec& v);

// Exact determinant (Bareiss fraction-free elimination).
Int determinant(const IntMat& m);

Int gcd_vector(const IntVec& v);

Int floor_rat(const Rat& r);

// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);
bool is_perfect_square(const Int& n, Int* root = nullptr);

// Congruence diagonalization of a symmetric rational matrix: returns a
// diagonal d with P^T M P = diag(d) for some invertible rational P.
// Zero entries mark the radical.
RatVec symmetric_diagonalize(const RatMat& m);

RatMat to_rational(const IntMat& m);

bool lex_less(const IntVec& a, const IntVec& b);

}  // namespace k3cert
