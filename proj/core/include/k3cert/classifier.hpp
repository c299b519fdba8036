#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3cert/conditions.hpp"
#include "k3cert/lattice.hpp"
#include "k3cert/positivity.hpp"
#include "k3cert/qform.hpp"

namespace k3cert::classifier {

enum class Verdict {
  OddRank,
  Elliptic,
  Rank4Exceptional,
  Rank2Condition,
  InfiniteAutomorphismsDeduced,
  Inconclusive,
};

std::string verdict_name(Verdict v);

struct Certificate {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<DivisorClass> elliptic_witness;  // isotropic and primitive
  std::optional<int> exceptional_index;          // 1 or 2 for Rank4Exceptional
  std::optional<conditions::Condition> condition;
  std::optional<conditions::ConditionWitness> witness;
  std::optional<Int> determinant;  // recorded for the A1 branch
  std::vector<std::string> assumptions;
  std::vector<std::string> reasons;  // populated for Inconclusive
  Int characteristic{0};
};

/// Decision order: rank >= 5 is always elliptic; any isotropic class gives
/// the elliptic branch; odd rank stands on its own; anisotropic rank 4
/// resolves through the two exceptional lattices or deduces infinite
/// automorphisms; anisotropic rank 2 tries the conditions A1, A2, A3 on the
/// queried class. Throws NotK3LatticeError unless the signature is (1, r-1, 0).
Certificate classify(const DivisorClass& ample, const std::optional<DivisorClass>& queried,
                     const Int& characteristic, const std::optional<positivity::RootSet>& roots,
                     const qform::SearchOptions& options = {});

/// Re-checks every embedded witness through the public operations.
bool verify_certificate(const Certificate& certificate, const DivisorClass& ample,
                        const std::optional<DivisorClass>& queried);

struct CorpusEntry {
  std::string name;
  LatticePtr lattice;
  DivisorClass ample;
  positivity::RootSet roots;
};

/// The bundled lattices: U, <2>, <4>, <6>, the Bryan-Leung lattice, and the
/// two exceptional rank-4 lattices, each with a designated ample class and a
/// complete root list up to degree 10.
const std::vector<CorpusEntry>& corpus();

const CorpusEntry& corpus_entry(const std::string& name);

}  // namespace k3cert::classifier
