#pragma once

#include <optional>
#include <string>

#include "k3cert/lattice.hpp"

namespace k3cert {

struct IsometryOptions {
  // Candidate basis images are searched in the coordinate box [-bound, bound]^r.
  int coordinate_bound = 8;
};

/// Fast invariant comparison. Returns the first mismatch (rank, signature,
/// discriminant) or nullopt when the invariants agree.
std::optional<std::string> isometry_obstruction(const Lattice& a, const Lattice& b);

/// Searches for an integral T with T^t G_a T = G_b by matching basis vectors
/// of equal norm inside a bounded coordinate box. Supported for rank <= 4.
/// nullopt means: invariants mismatch, or the bounded search was exhausted;
/// it is a proof of non-isometry only in the former case.
std::optional<IntMat> lattice_isomorphic(const Lattice& a, const Lattice& b,
                                         const IsometryOptions& options = {});

}  // namespace k3cert
