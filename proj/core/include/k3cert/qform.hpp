#pragma once

#include <optional>
#include <vector>

#include "k3cert/lattice.hpp"

namespace k3cert::qform {

struct SearchOptions {
  // Cap on coordinate absolute values in witness searches. Verdicts never
  // depend on it, only witness extraction does.
  Int coordinate_cap{10000};
};

enum class IsotropyStatus { Isotropic, Anisotropic, Unknown };
enum class IsotropyMethod { ClosedFormRank2, LocalGlobal, MeyerRank5, BoundedSearch };

struct IsotropyVerdict {
  IsotropyStatus status = IsotropyStatus::Unknown;
  IsotropyMethod method = IsotropyMethod::BoundedSearch;
  std::optional<DivisorClass> witness;
};

/// Does the lattice contain a nonzero class of square zero?
/// rank 1: definite at the real place. rank 2: perfect-square discriminant
/// test with a constructed witness. rank 3-4: local solubility at the real
/// place and at the primes dividing twice the discriminant. rank >= 5:
/// guaranteed by indefiniteness, witness by expanding search.
/// Requires signature (1, r-1, 0); degenerate input throws InvalidInputError.
IsotropyVerdict isotropic_exists(const LatticePtr& lattice, const SearchOptions& options = {});

/// The local-global solubility test in isolation (every completion of Q).
/// Exposed so independent oracles can cross-check it.
bool locally_soluble_everywhere(const Lattice& lattice);

/// Complete list of v with deg_min <= ample.v <= deg_max and v.v >= min_square,
/// lexicographically sorted. Finite because the degree slab projects onto the
/// negative definite complement of the ample class as an ellipsoid.
std::vector<DivisorClass> slab_vectors(const DivisorClass& ample, const Int& deg_min,
                                       const Int& deg_max, const Int& min_square);

/// Exactly the v with v.v = norm and 0 < ample.v <= degree_max; complete,
/// lexicographically sorted. Throws InvalidAmpleError unless ample.ample > 0.
std::vector<DivisorClass> enumerate_norm_vectors(const DivisorClass& ample, const Int& norm,
                                                 const Int& degree_max);

enum class RepresentsConclusion { Represented, NotRepresented, Inconclusive };

struct RepresentsResult {
  RepresentsConclusion conclusion = RepresentsConclusion::Inconclusive;
  std::optional<DivisorClass> witness;
  Int cap_used{0};
};

/// Some v != 0 with v.v = n. Exact decision in rank 1 and (by descent on the
/// binary form) in rank 2; bounded search with a reported cap otherwise.
RepresentsResult represents(const LatticePtr& lattice, const Int& n,
                            const SearchOptions& options = {});

/// Square of the projection of R onto the orthogonal complement of H:
/// R.R - (H.R)^2 / H.H, exact. Nonpositive whenever the signature is (1, r-1).
Rat project_orthogonal(const DivisorClass& H, const DivisorClass& R);

}  // namespace k3cert::qform
