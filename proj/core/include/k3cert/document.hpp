#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3cert/lattice.hpp"
#include "k3cert/positivity.hpp"

namespace k3cert::cli {

/// Plain structured-text description of a lattice with a designated ample
/// class and an optional root list. Integers only.
///
///   name: U
///   gram:
///   0 1
///   1 0
///   ample: 2 1
///   roots:
///   -1 1
///   root_degree_bound: 10
///   complete: true
struct LatticeDocument {
  std::string name;
  IntMat gram;
  IntVec ample;
  std::optional<std::vector<IntVec>> roots;
  std::optional<Int> root_degree_bound;
  std::optional<bool> complete;
};

/// Throws ParseError carrying line and field on malformed input.
LatticeDocument parse_document(const std::string& text);

std::string to_text(const LatticeDocument& doc);

struct LoadedLattice {
  LatticePtr lattice;
  DivisorClass ample;
  positivity::RootSet roots;
};

/// Enforces every module invariant; throws ValidationError naming the
/// violated invariant. Supplied root lists are validated, absent ones are
/// enumerated completely up to degree 10.
LoadedLattice realize(const LatticeDocument& doc);

}  // namespace k3cert::cli
