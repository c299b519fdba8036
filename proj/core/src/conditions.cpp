#include "k3cert/conditions.hpp"

#include <algorithm>
#include <map>

#include "k3cert/errors.hpp"
#include "k3cert/isometry.hpp"
#include "k3cert/qform.hpp"

namespace k3cert::conditions {

namespace {

using positivity::ample_degree_basis;
using positivity::PrecOrder;

struct DegreeKey {
  IntVec degrees;
  IntVec coords;
  bool operator<(const DegreeKey& other) const {
    if (degrees != other.degrees) return degrees < other.degrees;
    return coords < other.coords;
  }
  bool operator==(const DegreeKey& other) const = default;
};

DegreeKey key_of(const DivisorClass& v, const std::vector<DivisorClass>& basis) {
  DegreeKey k;
  for (const auto& a : basis) k.degrees.push_back(pair(a, v));
  k.coords = v.coords();
  return k;
}

// Positive-square candidates for the parts of a triple decomposition of L:
// each part P satisfies L.P >= 1 and the degrees sum to L.L, so the slab
// against L itself is exhaustive.
std::vector<DivisorClass> triple_part_candidates(const DivisorClass& L) {
  const Int sq = square(L);
  if (sq <= 2) return {};
  return qform::slab_vectors(L, 1, sq - 2, 2);
}

std::optional<std::vector<DivisorClass>> find_positive_triple(
    const DivisorClass& L, const std::vector<DivisorClass>& order_basis) {
  const Int sq = square(L);
  auto pool = triple_part_candidates(L);
  if (pool.empty()) return std::nullopt;

  std::vector<DegreeKey> keys;
  keys.reserve(pool.size());
  std::map<IntVec, size_t> index_of;
  for (size_t i = 0; i < pool.size(); ++i) {
    keys.push_back(key_of(pool[i], order_basis));
    index_of.emplace(pool[i].coords(), i);
  }
  std::vector<size_t> order(pool.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return keys[a] < keys[b]; });

  // The witness is normalized with parts descending in the degree order and
  // minimized lexicographically, so the most balanced decomposition wins.
  // Degrees against the leading basis class also sum over a triple, which
  // bounds the ordered scan: the largest part carries at least a third.
  const DivisorClass& lead = order_basis.front();
  const Int lead_total = pair(lead, L);
  for (size_t ia = 0; ia < order.size(); ++ia) {
    const DivisorClass& a = pool[order[ia]];
    if (3 * pair(lead, a) < lead_total) continue;
    for (size_t ib = 0; ib <= ia; ++ib) {
      const DivisorClass& b = pool[order[ib]];
      if (pair(lead, a) + 2 * pair(lead, b) < lead_total) continue;
      const DivisorClass c = L - a - b;
      if (square(c) <= 0 || pair(L, c) <= 0 || pair(L, c) > sq - 2) continue;
      const auto it = index_of.find(c.coords());
      if (it == index_of.end()) continue;
      if (keys[order[ib]] < keys[it->second]) continue;  // need b >= c in the order
      return std::vector<DivisorClass>{a, b, c};
    }
  }
  return std::nullopt;
}

ConditionWitness triple_witness(Condition cond, const DivisorClass& L,
                                const std::vector<DivisorClass>& parts) {
  ConditionWitness w{cond, parts, {}};
  for (size_t i = 0; i < parts.size(); ++i) {
    w.checks.emplace_back("L.L" + std::to_string(i + 1), pair(L, parts[i]));
    w.checks.emplace_back("L" + std::to_string(i + 1) + ".L" + std::to_string(i + 1),
                          square(parts[i]));
  }
  return w;
}

}  // namespace

std::string condition_name(Condition c) {
  switch (c) {
    case Condition::A1: return "A1";
    case Condition::A2: return "A2";
    case Condition::A3: return "A3";
    case Condition::Rank4: return "R4";
  }
  return "?";
}

bool check_A1(const Lattice& lattice) {
  if (lattice.rank() != 2) throw InvalidRankError("A1 applies to rank-2 lattices");
  return discriminant(lattice) % 2 == 0;
}

std::optional<ConditionWitness> check_A2(const DivisorClass& L, const positivity::RootSet& roots) {
  require_same_lattice(L, roots.ample());
  const auto basis = ample_degree_basis(roots.ample());
  auto parts = find_positive_triple(L, basis);
  if (!parts) return std::nullopt;
  return triple_witness(Condition::A2, L, *parts);
}

std::optional<ConditionWitness> check_A3(const DivisorClass& L, const positivity::RootSet& roots) {
  require_same_lattice(L, roots.ample());
  const Int sq = square(L);
  if (sq <= 0) return std::nullopt;
  const auto basis = ample_degree_basis(roots.ample());

  // L2 runs over the (-2)-classes with positive degree against L; the degree
  // L.L2 = L.L - L.L1 is at most L.L - 1.
  auto candidates = qform::enumerate_norm_vectors(L, -2, sq - 1);
  std::optional<std::vector<DivisorClass>> best;
  std::optional<std::pair<DegreeKey, DegreeKey>> best_key;
  for (const auto& l2 : candidates) {
    const DivisorClass l1 = L - l2;
    if (pair(L, l1) <= 0) continue;
    if (square(l1) <= 0) continue;
    const DivisibilityReport div = divisibility_violations(l1, l2);
    if (!div.clean()) continue;
    if (square(l1) + 2 * pair(l1, l2) < 18) continue;
    std::pair<DegreeKey, DegreeKey> key{key_of(l1, basis), key_of(l2, basis)};
    if (!best || key < *best_key) {
      best = std::vector<DivisorClass>{l1, l2};
      best_key = key;
    }
  }
  if (!best) return std::nullopt;
  ConditionWitness w{Condition::A3, *best, {}};
  const DivisorClass& l1 = (*best)[0];
  const DivisorClass& l2 = (*best)[1];
  w.checks.emplace_back("L.L1", pair(L, l1));
  w.checks.emplace_back("L.L2", pair(L, l2));
  w.checks.emplace_back("L1.L1", square(l1));
  w.checks.emplace_back("L2.L2", square(l2));
  w.checks.emplace_back("gcd(L1)", gcd_vector(l1.coords()));
  w.checks.emplace_back("gcd(L1-L2)", gcd_vector((l1 - l2).coords()));
  w.checks.emplace_back("L1.L1+2*L1.L2", square(l1) + 2 * pair(l1, l2));
  return w;
}

IntMat exceptional_rank4_gram(int which) {
  if (which == 1)
    return {{2, -1, -1, -1}, {-1, -2, 0, 0}, {-1, 0, -2, 0}, {-1, 0, 0, -2}};
  if (which == 2)
    return {{12, -2, 0, 0}, {-2, -2, -1, 0}, {0, -1, -2, -1}, {0, 0, -1, -2}};
  throw InvalidInputError("exceptional rank-4 lattice index must be 1 or 2");
}

std::optional<int> exceptional_rank4_match(const Lattice& lattice) {
  if (lattice.rank() != 4) return std::nullopt;
  for (int which = 1; which <= 2; ++which) {
    const auto reference = Lattice::make(exceptional_rank4_gram(which));
    if (lattice_isomorphic(lattice, *reference)) return which;
  }
  return std::nullopt;
}

std::optional<ConditionWitness> check_rank4(const DivisorClass& L) {
  if (!exceptional_rank4_match(L.lattice()))
    throw InvalidLatticeError("lattice is not one of the two exceptional rank-4 lattices");
  if (square(L) <= 0) return std::nullopt;
  // The queried class itself orders the search; it is big and nef by the
  // caller's assertion.
  const auto basis = ample_degree_basis(L);
  auto parts = find_positive_triple(L, basis);
  if (!parts) return std::nullopt;
  return triple_witness(Condition::Rank4, L, *parts);
}

bool verify(const ConditionWitness& witness, const DivisorClass& L) {
  switch (witness.condition) {
    case Condition::A1: {
      if (L.lattice().rank() != 2) return false;
      const Int det = discriminant(L.lattice());
      if (det % 2 != 0) return false;
      for (const auto& [label, value] : witness.checks)
        if (label == "det" && value != det) return false;
      return true;
    }
    case Condition::A2:
    case Condition::Rank4: {
      if (witness.parts.size() != 3) return false;
      DivisorClass sum = zero_class(L.lattice_ptr());
      for (const auto& p : witness.parts) sum = sum + p;
      if (sum != L) return false;
      for (const auto& p : witness.parts)
        if (pair(L, p) <= 0 || square(p) <= 0) return false;
      break;
    }
    case Condition::A3: {
      if (witness.parts.size() != 2) return false;
      const DivisorClass& l1 = witness.parts[0];
      const DivisorClass& l2 = witness.parts[1];
      if (l1 + l2 != L) return false;
      if (pair(L, l1) <= 0 || pair(L, l2) <= 0) return false;
      if (square(l1) <= 0 || square(l2) != -2) return false;
      if (!divisibility_violations(l1, l2).clean()) return false;
      if (square(l1) + 2 * pair(l1, l2) < 18) return false;
      break;
    }
  }
  // Every recorded value must re-evaluate from the parts alone.
  for (const auto& [label, value] : witness.checks) {
    Int recomputed;
    if (label.rfind("L.L", 0) == 0) {
      const size_t i = std::stoul(label.substr(3)) - 1;
      if (i >= witness.parts.size()) return false;
      recomputed = pair(L, witness.parts[i]);
    } else if (label.rfind("gcd(L1-L2)", 0) == 0) {
      recomputed = gcd_vector((witness.parts[0] - witness.parts[1]).coords());
    } else if (label.rfind("gcd(L1)", 0) == 0) {
      recomputed = gcd_vector(witness.parts[0].coords());
    } else if (label == "L1.L1+2*L1.L2") {
      recomputed = square(witness.parts[0]) + 2 * pair(witness.parts[0], witness.parts[1]);
    } else if (label.size() > 2 && label[0] == 'L' && label.find(".L") != std::string::npos) {
      const size_t dot = label.find(".L");
      const size_t i = std::stoul(label.substr(1, dot - 1)) - 1;
      const size_t j = std::stoul(label.substr(dot + 2)) - 1;
      if (i >= witness.parts.size() || j >= witness.parts.size()) return false;
      recomputed = pair(witness.parts[i], witness.parts[j]);
    } else if (label == "det") {
      recomputed = discriminant(L.lattice());
    } else {
      return false;
    }
    if (recomputed != value) return false;
  }
  return true;
}

bool genus1_bound_holds(const DivisorClass& A, const DivisorClass& R) {
  require_same_lattice(A, R);
  const Int s = square(A);
  if (s < 2) throw InvalidInputError("ample class must have square at least 2");
  if (square(R) != -2) throw InvalidInputError("R must be a (-2)-class");
  const Int x = pair(A, R);
  if (x < 4 * s) return false;
  const Int lhs = (x - 4 * s) * (x - 4 * s);
  return lhs >= 17 * (s - 2) * s;
}

bool hodge_index_validate(const std::vector<DivisorClass>& classes) {
  if (classes.empty()) throw InvalidInputError("at least one class is required");
  const size_t n = classes.size();
  IntMat gram(n, IntVec(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) gram[i][j] = pair(classes[i], classes[j]);

  int positive = 0;
  for (const Rat& d : symmetric_diagonalize(to_rational(gram)))
    if (d > 0) ++positive;
  if (positive > 1) return false;

  if (n == 3) {
    const Int aa = gram[0][0], dd = gram[1][1], rr = gram[2][2];
    const Int ad = gram[0][1], ar = gram[0][2], dr = gram[1][2];
    if (aa > 0 && dd >= 0 && rr == -2) {
      const Int lhs = (2 * ad + ar * dr) * (2 * ad + ar * dr);
      const Int rhs = (2 * aa + ar * ar) * (2 * dd + dr * dr);
      if (lhs < rhs) return false;
    }
  }
  return true;
}

Int regeneration_degree_bound(const Int& a, const Int& b, const Int& c) {
  if (a <= 0) throw InvalidInputError("leading square must be positive");
  const Int disc = b * b - a * c;
  if (disc <= 0) throw HodgeIndexViolationError("b^2 - ac must be positive");
  // least n0 with n0*a - b > 0 and (n0*a - b)^2 > b^2 - ac
  Int n0 = floor_rat(Rat(b + isqrt(disc), a));  // start just below the real threshold
  while (!(n0 * a - b > 0 && (n0 * a - b) * (n0 * a - b) > disc)) ++n0;
  return n0 + 2;
}

std::optional<GenusReductionPlan> genus_reduction_plan(const Int& g, const DivisorClass& C,
                                                       const DivisorClass& E,
                                                       const positivity::RootSet& roots) {
  if (g < 2) throw InvalidInputError("genus must be at least 2");
  require_same_lattice(C, E);
  if (square(E) < 0) throw InvalidInputError("genus-1 class must have nonnegative square");
  if (square(C) < -2) throw InvalidInputError("C must have square at least -2");
  if (positivity::is_nef(E, roots).status == positivity::Nefness::NotNef)
    throw InvalidInputError("genus-1 class must be nef");
  const Int contact = pair(C, E);
  if (contact < g) return std::nullopt;
  return GenusReductionPlan{C + E, g, contact};
}

bool big_nef_sum(const DivisorClass& E1, const DivisorClass& E2,
                 const positivity::RootSet& roots) {
  if (positivity::is_nef(E1, roots).status != positivity::Nefness::Nef) return false;
  if (positivity::is_nef(E2, roots).status != positivity::Nefness::Nef) return false;
  return square(E1 + E2) > 0;
}

Int fibration_index(const DivisorClass& F) {
  if (F.is_zero() || square(F) != 0)
    throw InvalidInputError("fibration index requires a nonzero isotropic class");
  return gcd_vector(matrix_apply(F.lattice().gram(), F.coords()));
}

}  // namespace k3cert::conditions
