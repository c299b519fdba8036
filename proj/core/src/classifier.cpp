#include "k3cert/classifier.hpp"

#include <algorithm>

#include "k3cert/errors.hpp"
#include "k3cert/isometry.hpp"

namespace k3cert::classifier {

namespace {

using conditions::Condition;
using positivity::RootSet;
using qform::IsotropyStatus;
using qform::IsotropyVerdict;

void record_characteristic_caveats(Certificate& cert) {
  if (cert.characteristic > 0) {
    cert.assumptions.push_back("char > 0: non-superspecial surface assumed");
    if (cert.verdict == Verdict::Elliptic &&
        (cert.characteristic == 2 || cert.characteristic == 3)) {
      cert.assumptions.push_back(
          "char 2 or 3: isotrivially elliptic exception not excluded");
    }
  }
}

Certificate elliptic_certificate(const IsotropyVerdict& iso, const Int& characteristic) {
  Certificate cert;
  cert.verdict = Verdict::Elliptic;
  cert.characteristic = characteristic;
  if (iso.witness) {
    DivisorClass w = *iso.witness;
    const Int g = gcd_vector(w.coords());
    if (g > 1) {
      IntVec c = w.coords();
      for (Int& x : c) x /= g;
      w = DivisorClass(w.lattice_ptr(), std::move(c));
    }
    cert.elliptic_witness = w;
  } else {
    cert.assumptions.push_back("isotropic witness search exceeded the coordinate cap");
  }
  return cert;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::OddRank: return "OddRank";
    case Verdict::Elliptic: return "Elliptic";
    case Verdict::Rank4Exceptional: return "Rank4Exceptional";
    case Verdict::Rank2Condition: return "Rank2Condition";
    case Verdict::InfiniteAutomorphismsDeduced: return "InfiniteAutomorphismsDeduced";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Certificate classify(const DivisorClass& ample, const std::optional<DivisorClass>& queried,
                     const Int& characteristic, const std::optional<RootSet>& roots,
                     const qform::SearchOptions& options) {
  const LatticePtr& lattice = ample.lattice_ptr();
  const int r = lattice->rank();
  if (!(signature(*lattice) == SignatureTriple{1, r - 1, 0}))
    throw NotK3LatticeError("signature is not (1, r-1, 0)");
  if (square(ample) <= 0) throw InvalidAmpleError("ample class must have positive square");
  if (characteristic < 0) throw InvalidInputError("characteristic must be nonnegative");
  if (queried) require_same_lattice(ample, *queried);
  if (roots) require_same_lattice(ample, roots->ample());

  Certificate cert;
  cert.characteristic = characteristic;
  if (roots) {
    cert.assumptions.push_back(
        (roots->complete_up_to_bound() ? "root list complete up to degree "
                                       : "root list supplied up to degree ") +
        roots->degree_bound().str());
  }

  const IsotropyVerdict iso = qform::isotropic_exists(lattice, options);
  if (iso.status == IsotropyStatus::Isotropic) {
    Certificate out = elliptic_certificate(iso, characteristic);
    out.assumptions.insert(out.assumptions.end(), cert.assumptions.begin(),
                           cert.assumptions.end());
    record_characteristic_caveats(out);
    return out;
  }

  if (r % 2 == 1) {
    cert.verdict = Verdict::OddRank;
    record_characteristic_caveats(cert);
    return cert;
  }

  if (r == 4) {
    const auto match = conditions::exceptional_rank4_match(*lattice);
    if (match) {
      cert.exceptional_index = *match;
      if (!queried) {
        cert.verdict = Verdict::Inconclusive;
        cert.reasons.push_back("exceptional rank-4 lattice: a queried class is required");
        record_characteristic_caveats(cert);
        return cert;
      }
      auto witness = conditions::check_rank4(*queried);
      if (witness) {
        cert.verdict = Verdict::Rank4Exceptional;
        cert.condition = Condition::Rank4;
        cert.witness = std::move(witness);
        cert.assumptions.push_back("queried class asserted big and nef");
        cert.assumptions.push_back("statement holds for a generic member of the moduli space");
      } else {
        cert.verdict = Verdict::Inconclusive;
        cert.reasons.push_back(
            "queried class admits no decomposition into three positive parts");
      }
      record_characteristic_caveats(cert);
      return cert;
    }
    // Not isometric to either exceptional lattice. The deduction of infinite
    // automorphisms is sound only when the invariants rule both out; an
    // exhausted search with matching invariants stays inconclusive.
    bool invariants_rule_out_both = true;
    for (int which = 1; which <= 2; ++which) {
      const auto reference = Lattice::make(conditions::exceptional_rank4_gram(which));
      if (!isometry_obstruction(*lattice, *reference)) invariants_rule_out_both = false;
    }
    if (invariants_rule_out_both) {
      cert.verdict = Verdict::InfiniteAutomorphismsDeduced;
      cert.assumptions.push_back(
          "anisotropic rank-4 lattice distinct from both exceptional lattices");
    } else {
      cert.verdict = Verdict::Inconclusive;
      cert.reasons.push_back(
          "bounded isometry search could not separate the lattice from the exceptional pair");
    }
    record_characteristic_caveats(cert);
    return cert;
  }

  // rank 2, anisotropic
  if (conditions::check_A1(*lattice)) {
    cert.verdict = Verdict::Rank2Condition;
    cert.condition = Condition::A1;
    cert.determinant = discriminant(*lattice);
    conditions::ConditionWitness w{Condition::A1, {}, {{"det", *cert.determinant}}};
    cert.witness = std::move(w);
    cert.assumptions.push_back("statement holds for a generic member of the moduli space");
    record_characteristic_caveats(cert);
    return cert;
  }
  cert.reasons.push_back("A1 fails: discriminant is odd");
  if (!queried) {
    cert.verdict = Verdict::Inconclusive;
    cert.reasons.push_back("rank-2 conditions A2 and A3 require a queried class");
    record_characteristic_caveats(cert);
    return cert;
  }
  const RootSet working_roots =
      roots ? *roots : RootSet::enumerate(ample, pair(ample, *queried) + 2);
  if (auto w = conditions::check_A2(*queried, working_roots)) {
    cert.verdict = Verdict::Rank2Condition;
    cert.condition = Condition::A2;
    cert.witness = std::move(w);
    cert.assumptions.push_back("queried class asserted big and nef");
    cert.assumptions.push_back("statement holds for a generic member of the moduli space");
    record_characteristic_caveats(cert);
    return cert;
  }
  cert.reasons.push_back("A2 fails: no triple decomposition into positive parts");
  if (auto w = conditions::check_A3(*queried, working_roots)) {
    cert.verdict = Verdict::Rank2Condition;
    cert.condition = Condition::A3;
    cert.witness = std::move(w);
    cert.assumptions.push_back("queried class asserted big and nef");
    cert.assumptions.push_back("statement holds for a generic member of the moduli space");
    record_characteristic_caveats(cert);
    return cert;
  }
  cert.reasons.push_back("A3 fails: no admissible pair decomposition");
  cert.verdict = Verdict::Inconclusive;
  record_characteristic_caveats(cert);
  return cert;
}

bool verify_certificate(const Certificate& certificate, const DivisorClass& ample,
                        const std::optional<DivisorClass>& queried) {
  switch (certificate.verdict) {
    case Verdict::Elliptic: {
      if (!certificate.elliptic_witness) return true;  // cap exhaustion was recorded
      const DivisorClass& w = *certificate.elliptic_witness;
      return !w.is_zero() && square(w) == 0 && is_primitive(w);
    }
    case Verdict::Rank2Condition:
    case Verdict::Rank4Exceptional: {
      if (!certificate.witness) return false;
      if (certificate.witness->condition == conditions::Condition::A1)
        return conditions::verify(*certificate.witness, ample);
      if (!queried) return false;
      return conditions::verify(*certificate.witness, *queried);
    }
    case Verdict::OddRank:
      return ample.lattice().rank() % 2 == 1;
    case Verdict::InfiniteAutomorphismsDeduced:
    case Verdict::Inconclusive:
      return true;
  }
  return false;
}

namespace {

CorpusEntry make_entry(std::string name, IntMat gram, IntVec ample_coords) {
  LatticePtr lattice = Lattice::make(std::move(gram), name);
  DivisorClass ample(lattice, std::move(ample_coords));
  RootSet roots = RootSet::enumerate(ample, 10);
  return CorpusEntry{std::move(name), lattice, std::move(ample), std::move(roots)};
}

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> entries;
  entries.push_back(make_entry("U", {{0, 1}, {1, 0}}, {2, 1}));
  entries.push_back(make_entry("deg2", {{2}}, {1}));
  entries.push_back(make_entry("deg4", {{4}}, {1}));
  entries.push_back(make_entry("deg6", {{6}}, {1}));
  entries.push_back(make_entry("bryan-leung", {{-2, 1}, {1, 0}}, {1, 3}));
  entries.push_back(
      make_entry("rank4-exceptional-1", conditions::exceptional_rank4_gram(1), {1, 0, 0, 0}));
  // the first basis vector sits on a root wall here; (1,0,0,1) does not
  entries.push_back(
      make_entry("rank4-exceptional-2", conditions::exceptional_rank4_gram(2), {1, 0, 0, 1}));
  for (const auto& entry : entries) {
    const int r = entry.lattice->rank();
    if (!(signature(*entry.lattice) == SignatureTriple{1, r - 1, 0}))
      throw ValidationError("corpus signature (1, r-1, 0)", entry.name);
  }
  return entries;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build_corpus();
  return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& entry : corpus())
    if (entry.name == name) return entry;
  throw InvalidInputError("unknown corpus lattice '" + name + "'");
}

}  // namespace k3cert::classifier
