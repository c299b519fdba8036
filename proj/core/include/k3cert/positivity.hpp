#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3cert/lattice.hpp"

namespace k3cert::positivity {

/// Effective (-2)-classes of positive degree against a designated ample
/// class, together with the degree bound the list was gathered under.
class RootSet {
 public:
  /// Complete enumeration up to degree_bound (slab projection onto the
  /// negative definite complement of the ample class).
  static RootSet enumerate(const DivisorClass& ample, const Int& degree_bound);

  /// Wraps an externally supplied list; validates every root invariant.
  static RootSet from_list(DivisorClass ample, std::vector<DivisorClass> roots, Int degree_bound,
                           bool complete_up_to_bound);

  const DivisorClass& ample() const { return ample_; }
  const std::vector<DivisorClass>& roots() const { return roots_; }
  const Int& degree_bound() const { return degree_bound_; }
  bool complete_up_to_bound() const { return complete_; }

 private:
  RootSet(DivisorClass ample, std::vector<DivisorClass> roots, Int degree_bound, bool complete)
      : ample_(std::move(ample)),
        roots_(std::move(roots)),
        degree_bound_(std::move(degree_bound)),
        complete_(complete) {}

  DivisorClass ample_;
  std::vector<DivisorClass> roots_;
  Int degree_bound_;
  bool complete_;
};

enum class Effectivity { Effective, NotEffective, Unknown };

struct EffectivityVerdict {
  Effectivity status = Effectivity::Unknown;
  std::string reason;
  // When effectivity was certified by an explicit decomposition:
  std::optional<DivisorClass> nef_part;
  std::vector<std::pair<DivisorClass, Int>> root_combination;
};

/// Three-valued effectivity. Sufficient side: v = 0, or v.v >= -2 with
/// positive ample degree, or a verified decomposition into a nef class and a
/// nonnegative root combination (exhaustive in rank 2, so rank-2 verdicts are
/// exact). Necessary side: nonzero classes of nonpositive ample degree are
/// never effective.
EffectivityVerdict is_effective(const DivisorClass& v, const RootSet& roots);

enum class Nefness { Nef, NotNef, Unknown };

struct NefVerdict {
  Nefness status = Nefness::Unknown;
  std::optional<DivisorClass> witness;  // a root pairing negatively
  bool exact = false;
  std::string note;
};

/// In rank 2 the verdict is exact: every root that could pair negatively with
/// a candidate inside the positive cone has ample degree at most deg(v), so a
/// complete bounded enumeration settles nefness. In higher rank a Nef verdict
/// is conditional on the supplied root list being complete up to its bound.
NefVerdict is_nef(const DivisorClass& v, const RootSet& roots);

enum class BigNefness { BigNef, NotBigNef, Unknown };

struct BigNefVerdict {
  BigNefness status = BigNefness::Unknown;
  std::optional<DivisorClass> witness;
  bool exact = false;
  std::string note;
};

BigNefVerdict is_big_nef(const DivisorClass& v, const RootSet& roots);

enum class PrecOrder { Less, EquivNumerically, Greater };

/// Lexicographic comparison of degree vectors against an ordered basis of
/// ample classes. Requires rank-many independent classes of positive square
/// and positive mutual degrees.
PrecOrder prec_compare(const DivisorClass& F, const DivisorClass& G,
                       const std::vector<DivisorClass>& basis);

/// Deterministic ample degree basis extending a given ample class: the
/// canonical basis used for tie-breaking throughout the search routines.
std::vector<DivisorClass> ample_degree_basis(const DivisorClass& ample);

enum class Minimality { Minimal, NotMinimal, Unknown };

struct MinimalNefVerdict {
  Minimality status = Minimality::Unknown;
  std::optional<DivisorClass> witness;  // nef M with v - M effective
  std::string note;
};

/// A nef class from which no nonzero proper nef class can be split off
/// leaving an effective remainder. The zero class is rejected outright.
/// Exact in rank 2; Unknown in higher rank when the search cannot be closed.
MinimalNefVerdict is_minimal_nef(const DivisorClass& v, const RootSet& roots);

struct NefPart {
  DivisorClass part;
  Int multiplicity;
  bool minimal_verified;
};

struct ResidualPart {
  DivisorClass root;
  Int multiplicity;
};

struct Decomposition {
  DivisorClass total;
  std::vector<NefPart> nef_parts;
  std::vector<ResidualPart> residual;
  bool partial = false;
  std::optional<DivisorClass> stuck;

  DivisorClass reconstruct() const;
};

/// Greedy peel: repeatedly subtract the degree-least nef subdivisor (which is
/// automatically minimal nef) until the remainder carries no nef part, then
/// express the remainder as a nonnegative root combination. The ample degree
/// of the remainder strictly decreases every iteration.
Decomposition minimal_nef_decompose(const DivisorClass& D, const RootSet& roots);

/// Nonnegative integer combination of the given roots summing to the target.
std::optional<std::vector<std::pair<DivisorClass, Int>>> root_combination(
    const DivisorClass& target, const std::vector<DivisorClass>& roots, const DivisorClass& ample);

}  // namespace k3cert::positivity
