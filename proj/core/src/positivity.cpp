#include "k3cert/positivity.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "k3cert/errors.hpp"
#include "k3cert/qform.hpp"

namespace k3cert::positivity {

namespace {

// Roots pairing negatively with a class v inside the closed positive cone
// have ample degree at most deg(v): project onto the ample complement and
// apply Cauchy-Schwarz in the negative definite part. Slack of 2 for safety.
Int nef_root_degree_bound(const DivisorClass& v, const DivisorClass& ample) {
  return pair(ample, v) + 2;
}

std::vector<DivisorClass> complete_roots_up_to(const DivisorClass& ample, const Int& degree) {
  return qform::enumerate_norm_vectors(ample, -2, degree);
}

bool rank2(const DivisorClass& v) { return v.lattice().rank() == 2; }

// Exact rank-2 nefness against the full (finite) set of relevant roots.
NefVerdict nef_exact_rank2(const DivisorClass& v, const DivisorClass& ample) {
  NefVerdict verdict;
  verdict.exact = true;
  if (v.is_zero()) {
    verdict.status = Nefness::Nef;
    return verdict;
  }
  if (square(v) < 0 || pair(ample, v) < 0) {
    verdict.status = Nefness::NotNef;
    if (square(v) == -2 && pair(ample, v) > 0) verdict.witness = v;
    verdict.note = "outside the closed positive cone";
    return verdict;
  }
  for (const auto& r : complete_roots_up_to(ample, nef_root_degree_bound(v, ample))) {
    if (pair(v, r) < 0) {
      verdict.status = Nefness::NotNef;
      verdict.witness = r;
      return verdict;
    }
  }
  verdict.status = Nefness::Nef;
  return verdict;
}

struct PrecKey {
  IntVec degrees;
  IntVec coords;  // final tie-break; distinct classes always differ here
};

bool prec_key_less(const PrecKey& a, const PrecKey& b) {
  if (a.degrees != b.degrees) return a.degrees < b.degrees;
  return a.coords < b.coords;
}

PrecKey prec_key(const DivisorClass& v, const std::vector<DivisorClass>& basis) {
  PrecKey k;
  k.degrees.reserve(basis.size());
  for (const auto& a : basis) k.degrees.push_back(pair(a, v));
  k.coords = v.coords();
  return k;
}

void sort_by_prec(std::vector<DivisorClass>& classes, const std::vector<DivisorClass>& basis) {
  std::vector<std::pair<PrecKey, size_t>> keyed;
  keyed.reserve(classes.size());
  for (size_t i = 0; i < classes.size(); ++i) keyed.emplace_back(prec_key(classes[i], basis), i);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return prec_key_less(a.first, b.first); });
  std::vector<DivisorClass> out;
  out.reserve(classes.size());
  for (const auto& [key, idx] : keyed) out.push_back(classes[idx]);
  classes = std::move(out);
}

}  // namespace

RootSet RootSet::enumerate(const DivisorClass& ample, const Int& degree_bound) {
  if (square(ample) <= 0) throw InvalidAmpleError("ample class must have positive square");
  auto roots = qform::enumerate_norm_vectors(ample, -2, degree_bound);
  return RootSet(ample, std::move(roots), degree_bound, true);
}

RootSet RootSet::from_list(DivisorClass ample, std::vector<DivisorClass> roots, Int degree_bound,
                           bool complete_up_to_bound) {
  if (square(ample) <= 0) throw InvalidAmpleError("ample class must have positive square");
  for (size_t i = 0; i < roots.size(); ++i) {
    require_same_lattice(ample, roots[i]);
    if (square(roots[i]) != -2)
      throw ValidationError("root self-intersection -2", "entry " + std::to_string(i));
    if (pair(ample, roots[i]) <= 0)
      throw ValidationError("positive ample degree on roots", "entry " + std::to_string(i));
    for (size_t j = 0; j < i; ++j)
      if (roots[j] == roots[i]) throw ValidationError("no duplicate roots", "entry " + std::to_string(i));
  }
  return RootSet(std::move(ample), std::move(roots), std::move(degree_bound), complete_up_to_bound);
}

std::optional<std::vector<std::pair<DivisorClass, Int>>> root_combination(
    const DivisorClass& target, const std::vector<DivisorClass>& roots, const DivisorClass& ample) {
  if (target.is_zero()) return std::vector<std::pair<DivisorClass, Int>>{};
  const Int budget = pair(ample, target);
  if (budget <= 0) return std::nullopt;

  std::vector<std::pair<DivisorClass, Int>> chosen;
  std::function<bool(size_t, DivisorClass, Int)> descend = [&](size_t i, DivisorClass rest,
                                                               Int rest_degree) -> bool {
    if (rest.is_zero()) return true;
    if (i == roots.size() || rest_degree <= 0) return false;
    const Int d = pair(ample, roots[i]);
    const Int max_mult = rest_degree / d;
    for (Int m = max_mult; m >= 0; --m) {
      DivisorClass next = rest - roots[i] * m;
      if (m > 0) chosen.emplace_back(roots[i], m);
      if (descend(i + 1, std::move(next), rest_degree - m * d)) return true;
      if (m > 0) chosen.pop_back();
    }
    return false;
  };
  if (descend(0, target, budget)) return chosen;
  return std::nullopt;
}

EffectivityVerdict is_effective(const DivisorClass& v, const RootSet& roots) {
  require_same_lattice(v, roots.ample());
  EffectivityVerdict verdict;
  if (v.is_zero()) {
    verdict.status = Effectivity::Effective;
    verdict.reason = "zero class";
    return verdict;
  }
  const Int deg = pair(roots.ample(), v);
  if (deg < 0) {
    verdict.status = Effectivity::NotEffective;
    verdict.reason = "negative ample degree";
    return verdict;
  }
  if (deg == 0) {
    verdict.status = Effectivity::NotEffective;
    verdict.reason = "nonzero class of ample degree zero";
    return verdict;
  }
  if (square(v) >= -2) {
    verdict.status = Effectivity::Effective;
    verdict.reason = "Riemann-Roch: v.v >= -2 and positive ample degree";
    return verdict;
  }

  // Certify by decomposition into nef part + nonnegative root combination.
  // In rank 2 the relevant root list is complete, which makes the search
  // exhaustive; otherwise only the supplied roots are available.
  const bool exact = rank2(v);
  std::vector<DivisorClass> pool =
      exact ? complete_roots_up_to(roots.ample(), deg) : roots.roots();

  std::optional<EffectivityVerdict> found;
  std::vector<std::pair<DivisorClass, Int>> chosen;
  std::function<bool(size_t, DivisorClass)> descend = [&](size_t i, DivisorClass rest) -> bool {
    const Int rest_deg = pair(roots.ample(), rest);
    if (rest_deg < 0) return false;
    bool rest_nef = rest.is_zero();
    if (!rest_nef && exact) rest_nef = nef_exact_rank2(rest, roots.ample()).status == Nefness::Nef;
    if (!rest_nef && !exact && square(rest) >= 0 && rest_deg > 0) {
      // rank >= 3: accept a remainder certified nef against the supplied roots
      NefVerdict nv = is_nef(rest, roots);
      rest_nef = nv.status == Nefness::Nef;
    }
    if (rest_nef) {
      EffectivityVerdict ok;
      ok.status = Effectivity::Effective;
      ok.reason = "nef part plus nonnegative root combination";
      if (!rest.is_zero()) ok.nef_part = rest;
      ok.root_combination = chosen;
      found = std::move(ok);
      return true;
    }
    if (i == pool.size()) return false;
    const Int d = pair(roots.ample(), pool[i]);
    const Int max_mult = rest_deg / d;
    for (Int m = max_mult; m >= 0; --m) {
      if (m > 0) chosen.emplace_back(pool[i], m);
      if (descend(i + 1, rest - pool[i] * m)) return true;
      if (m > 0) chosen.pop_back();
    }
    return false;
  };
  if (descend(0, v)) return *found;

  if (exact) {
    verdict.status = Effectivity::NotEffective;
    verdict.reason = "exhaustive decomposition search failed";
  } else {
    verdict.status = Effectivity::Unknown;
    verdict.reason = "no decomposition found over the supplied roots";
  }
  return verdict;
}

NefVerdict is_nef(const DivisorClass& v, const RootSet& roots) {
  require_same_lattice(v, roots.ample());
  NefVerdict verdict;
  if (v.is_zero()) {
    verdict.status = Nefness::Nef;
    verdict.exact = true;
    return verdict;
  }
  for (const auto& r : roots.roots()) {
    if (pair(v, r) < 0) {
      verdict.status = Nefness::NotNef;
      verdict.witness = r;
      verdict.exact = true;
      return verdict;
    }
  }
  if (square(v) < 0 || pair(roots.ample(), v) < 0) {
    verdict.status = Nefness::NotNef;
    verdict.exact = true;
    if (square(v) == -2 && pair(roots.ample(), v) > 0) verdict.witness = v;
    verdict.note = "outside the closed positive cone";
    return verdict;
  }
  if (rank2(v)) return nef_exact_rank2(v, roots.ample());
  if (roots.complete_up_to_bound()) {
    verdict.status = Nefness::Nef;
    verdict.exact = false;
    verdict.note = "conditional on root list complete up to degree " + roots.degree_bound().str();
    return verdict;
  }
  verdict.status = Nefness::Unknown;
  verdict.note = "root list not known to be complete";
  return verdict;
}

BigNefVerdict is_big_nef(const DivisorClass& v, const RootSet& roots) {
  const NefVerdict nef = is_nef(v, roots);
  BigNefVerdict verdict;
  verdict.witness = nef.witness;
  verdict.exact = nef.exact;
  verdict.note = nef.note;
  if (nef.status == Nefness::NotNef) {
    verdict.status = BigNefness::NotBigNef;
    return verdict;
  }
  if (square(v) <= 0) {
    verdict.status = BigNefness::NotBigNef;
    verdict.note = "not big: nonpositive self-intersection";
    verdict.exact = true;
    return verdict;
  }
  verdict.status = nef.status == Nefness::Nef ? BigNefness::BigNef : BigNefness::Unknown;
  return verdict;
}

PrecOrder prec_compare(const DivisorClass& F, const DivisorClass& G,
                       const std::vector<DivisorClass>& basis) {
  require_same_lattice(F, G);
  const int r = F.lattice().rank();
  if (static_cast<int>(basis.size()) != r)
    throw InvalidInputError("degree basis must contain rank-many classes");
  IntMat rows;
  for (const auto& a : basis) {
    require_same_lattice(F, a);
    if (square(a) <= 0) throw InvalidInputError("degree basis classes must have positive square");
    rows.push_back(a.coords());
  }
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j)
      if (pair(basis[i], basis[j]) <= 0)
        throw InvalidInputError("degree basis classes must have positive mutual degrees");
  if (determinant(rows) == 0) throw InvalidInputError("degree basis classes must be independent");

  for (const auto& a : basis) {
    const Int df = pair(a, F);
    const Int dg = pair(a, G);
    if (df < dg) return PrecOrder::Less;
    if (df > dg) return PrecOrder::Greater;
  }
  return PrecOrder::EquivNumerically;
}

std::vector<DivisorClass> ample_degree_basis(const DivisorClass& ample) {
  if (square(ample) <= 0) throw InvalidAmpleError("ample class must have positive square");
  const LatticePtr& lattice = ample.lattice_ptr();
  const int r = lattice->rank();
  std::vector<DivisorClass> basis{ample};

  auto independent_with = [&](const DivisorClass& cand) {
    IntMat rows;
    for (const auto& b : basis) rows.push_back(b.coords());
    rows.push_back(cand.coords());
    // rank check via Gram determinant of the candidate set in the ambient
    // coordinates: rows are independent iff rows * rows^T is nonsingular.
    return determinant(matrix_product(rows, matrix_transpose(rows))) != 0;
  };

  for (int i = 0; i < r && static_cast<int>(basis.size()) < r; ++i) {
    const DivisorClass e = basis_class(lattice, i);
    for (Int n = 1; n < 100000; ++n) {
      const DivisorClass cand = ample * n + e;
      if (square(cand) <= 0) continue;
      bool ok = true;
      for (const auto& b : basis) ok = ok && pair(b, cand) > 0;
      if (!ok || !independent_with(cand)) continue;
      basis.push_back(cand);
      break;
    }
  }
  if (static_cast<int>(basis.size()) != r)
    throw Error("internal: could not extend ample class to a degree basis");
  return basis;
}

MinimalNefVerdict is_minimal_nef(const DivisorClass& v, const RootSet& roots) {
  MinimalNefVerdict verdict;
  if (v.is_zero()) {
    verdict.status = Minimality::NotMinimal;
    verdict.note = "zero class is excluded";
    return verdict;
  }
  const NefVerdict nef = is_nef(v, roots);
  if (nef.status != Nefness::Nef)
    throw PreconditionError("minimality is only defined for classes certified nef");

  const auto basis = ample_degree_basis(roots.ample());
  const Int deg_v = pair(roots.ample(), v);
  bool saw_unknown = false;
  auto candidates = qform::slab_vectors(roots.ample(), 1, deg_v - 1, 0);
  sort_by_prec(candidates, basis);
  for (const auto& m : candidates) {
    if (m == v) continue;
    const NefVerdict mn = is_nef(m, roots);
    if (mn.status == Nefness::Unknown) {
      saw_unknown = true;
      continue;
    }
    if (mn.status != Nefness::Nef) continue;
    const EffectivityVerdict rest = is_effective(v - m, roots);
    if (rest.status == Effectivity::Effective) {
      verdict.status = Minimality::NotMinimal;
      verdict.witness = m;
      return verdict;
    }
    if (rest.status == Effectivity::Unknown) saw_unknown = true;
  }
  if (rank2(v)) {
    verdict.status = Minimality::Minimal;
    return verdict;
  }
  verdict.status = Minimality::Unknown;
  verdict.note = saw_unknown ? "sub-verdicts not exact in rank >= 3"
                             : "search cannot be certified exhaustive in rank >= 3";
  return verdict;
}

DivisorClass Decomposition::reconstruct() const {
  DivisorClass sum = zero_class(total.lattice_ptr());
  for (const auto& p : nef_parts) sum = sum + p.part * p.multiplicity;
  for (const auto& r : residual) sum = sum + r.root * r.multiplicity;
  return sum;
}

Decomposition minimal_nef_decompose(const DivisorClass& D, const RootSet& roots) {
  const EffectivityVerdict eff = is_effective(D, roots);
  if (eff.status != Effectivity::Effective)
    throw PreconditionError("decomposition requires a certified effective class");

  Decomposition out{D, {}, {}, false, std::nullopt};
  const auto basis = ample_degree_basis(roots.ample());

  std::map<IntVec, Int> nef_mult;
  std::vector<DivisorClass> nef_order;
  DivisorClass current = D;
  while (!current.is_zero()) {
    const Int deg = pair(roots.ample(), current);
    if (deg <= 0) break;
    // The prec-least nef subdivisor is automatically minimal nef: any nef
    // M < Q with Q - M effective would precede it.
    auto candidates = qform::slab_vectors(roots.ample(), 1, deg, 0);
    sort_by_prec(candidates, basis);
    std::optional<DivisorClass> peel;
    for (const auto& q : candidates) {
      if (is_nef(q, roots).status != Nefness::Nef) continue;
      const DivisorClass rest = current - q;
      if (!rest.is_zero() && is_effective(rest, roots).status != Effectivity::Effective) continue;
      peel = q;
      break;
    }
    if (!peel) break;
    const Int before = pair(roots.ample(), current);
    current = current - *peel;
    if (pair(roots.ample(), current) >= before)
      throw Error("internal: decomposition failed to decrease ample degree");
    if (nef_mult.emplace(peel->coords(), 0).second) nef_order.push_back(*peel);
    nef_mult[peel->coords()] += 1;
  }

  for (const auto& q : nef_order) {
    const Minimality m = is_minimal_nef(q, roots).status;
    // A peeled part is the degree-least certified nef subdivisor, and any
    // certified minimality witness would have preceded it in that search.
    if (m == Minimality::NotMinimal) throw Error("internal: peeled part is not minimal nef");
    out.nef_parts.push_back({q, nef_mult[q.coords()], m == Minimality::Minimal});
  }

  if (!current.is_zero()) {
    const std::vector<DivisorClass> pool =
        rank2(D) ? complete_roots_up_to(roots.ample(), pair(roots.ample(), current))
                 : roots.roots();
    auto combo = root_combination(current, pool, roots.ample());
    if (combo) {
      for (auto& [root, mult] : *combo) out.residual.push_back({root, mult});
    } else {
      out.partial = true;
      out.stuck = current;
    }
  }
  return out;
}

}  // namespace k3cert::positivity
