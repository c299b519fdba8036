#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3cert/lattice.hpp"
#include "k3cert/positivity.hpp"

namespace k3cert::conditions {

enum class Condition { A1, A2, A3, Rank4 };

std::string condition_name(Condition c);

struct ConditionWitness {
  Condition condition;
  std::vector<DivisorClass> parts;
  // Each recorded check re-evaluates from the parts alone.
  std::vector<std::pair<std::string, Int>> checks;
};

/// Even discriminant test for rank-2 lattices.
bool check_A1(const Lattice& lattice);

/// L = L1 + L2 + L3 with L.Li > 0 and Li.Li > 0, searched exhaustively over
/// the degree slab against L itself. Ties go to the witness whose largest
/// part (then next, ...) is least in the degree order.
std::optional<ConditionWitness> check_A2(const DivisorClass& L, const positivity::RootSet& roots);

/// L = L1 + L2 with L.Li > 0, L1.L1 > 0, L2.L2 = -2, L1 not in 2*Lambda,
/// L1 - L2 not in n*Lambda for n >= 2, and L1.L1 + 2 L1.L2 >= 18.
std::optional<ConditionWitness> check_A3(const DivisorClass& L, const positivity::RootSet& roots);

/// The rank-4 triple condition on one of the two exceptional lattices;
/// throws InvalidLatticeError when the owning lattice is neither.
std::optional<ConditionWitness> check_rank4(const DivisorClass& L);

/// Gram matrices of the two exceptional rank-4 lattices (anisotropic with
/// finite automorphism group).
IntMat exceptional_rank4_gram(int which);
/// 1 or 2 when the lattice is isometric to the corresponding exceptional
/// rank-4 lattice, nullopt otherwise.
std::optional<int> exceptional_rank4_match(const Lattice& lattice);

/// Re-evaluates every recorded fact of a witness against the decomposed class.
bool verify(const ConditionWitness& witness, const DivisorClass& L);

/// Exact integer form of A.R >= 4 A^2 + sqrt(17 (A^2 - 2) A^2):
/// with x = A.R and s = A^2, true iff x >= 4s and (x - 4s)^2 >= 17 (s-2) s.
/// Requires A^2 >= 2 and R^2 = -2.
bool genus1_bound_holds(const DivisorClass& A, const DivisorClass& R);

/// At most one positive eigenvalue among the given classes; for a triple
/// (A, D, R) with A^2 > 0, D^2 >= 0, R^2 = -2 the equivalent scalar
/// inequality (2AD + (AR)(DR))^2 >= (2A^2 + (AR)^2)(2D^2 + (DR)^2) is
/// cross-checked as well.
bool hodge_index_validate(const std::vector<DivisorClass>& classes);

/// Least n with (n-2) a - b > 0 and ((n-2) a - b)^2 > b^2 - ac, i.e. two
/// more than the least integer strictly above (b + sqrt(b^2 - ac)) / a.
/// Requires a > 0 and b^2 - ac > 0 (HodgeIndexViolationError otherwise).
Int regeneration_degree_bound(const Int& a, const Int& b, const Int& c);

struct GenusReductionPlan {
  DivisorClass target;  // C + E
  Int genus;
  Int contact;  // C.E, which must be at least the genus
};

/// Attach a genus-1 class E to C to raise the genus to g; possible iff
/// C.E >= g. Requires g >= 2, E nef with E.E >= 0, and C.C >= -2.
std::optional<GenusReductionPlan> genus_reduction_plan(const Int& g, const DivisorClass& C,
                                                       const DivisorClass& E,
                                                       const positivity::RootSet& roots);

/// Both classes nef and (E1 + E2)^2 > 0.
bool big_nef_sum(const DivisorClass& E1, const DivisorClass& E2,
                 const positivity::RootSet& roots);

/// gcd of the degrees of a lattice basis against an isotropic class F.
Int fibration_index(const DivisorClass& F);

}  // namespace k3cert::conditions
