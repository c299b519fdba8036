#include "k3cert/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "k3cert/classifier.hpp"
#include "k3cert/conditions.hpp"
#include "k3cert/document.hpp"
#include "k3cert/errors.hpp"
#include "k3cert/isometry.hpp"
#include "k3cert/positivity.hpp"
#include "k3cert/qform.hpp"

namespace k3cert::cli {

namespace {

using nlohmann::json;

json json_int(const Int& v) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (v >= lo && v <= hi) return static_cast<long long>(v);
  return v.str();
}

json json_vec(const IntVec& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(json_int(x));
  return a;
}

std::string format_vec(const IntVec& v) {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ")";
  return out.str();
}

qform::SearchOptions search_options_from_env() {
  qform::SearchOptions options;
  if (const char* cap = std::getenv("K3CERT_SEARCH_CAP")) {
    try {
      options.coordinate_cap = Int(cap);
      if (options.coordinate_cap < 1) options.coordinate_cap = 1;
    } catch (const std::exception&) {
      throw InvalidInputError("K3CERT_SEARCH_CAP is not an integer");
    }
  }
  return options;
}

LoadedLattice load_lattice(const std::string& path_or_name) {
  for (const auto& entry : classifier::corpus()) {
    if (entry.name == path_or_name)
      return LoadedLattice{entry.lattice, entry.ample, entry.roots};
  }
  std::ifstream in(path_or_name);
  if (!in) throw InvalidInputError("no corpus lattice or readable file named '" + path_or_name + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  LatticeDocument doc = parse_document(buffer.str());
  if (doc.name.empty()) doc.name = path_or_name;
  return realize(doc);
}

DivisorClass parse_class(const std::string& csv, const LatticePtr& lattice) {
  IntVec coords;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    try {
      coords.push_back(Int(token));
    } catch (const std::exception&) {
      throw InvalidInputError("class coordinate '" + token + "' is not an integer");
    }
  }
  if (static_cast<int>(coords.size()) != lattice->rank())
    throw ValidationError("class length equals rank",
                          "expected " + std::to_string(lattice->rank()) + " coordinates");
  return DivisorClass(lattice, std::move(coords));
}

json witness_json(const conditions::ConditionWitness& w) {
  json out;
  out["condition"] = conditions::condition_name(w.condition);
  json parts = json::array();
  for (const auto& p : w.parts) parts.push_back(json_vec(p.coords()));
  out["parts"] = parts;
  json checks = json::array();
  for (const auto& [label, value] : w.checks)
    checks.push_back(json{{"label", label}, {"value", json_int(value)}});
  out["checks"] = checks;
  return out;
}

void print_witness(std::ostream& out, const conditions::ConditionWitness& w) {
  out << "condition: " << conditions::condition_name(w.condition) << "\n";
  if (!w.parts.empty()) {
    out << "parts:";
    for (const auto& p : w.parts) out << " " << format_vec(p.coords());
    out << "\n";
  }
  for (const auto& [label, value] : w.checks) out << "  " << label << " = " << value << "\n";
}

json certificate_json(const classifier::Certificate& cert, const std::string& lattice_name,
                      const std::optional<DivisorClass>& queried) {
  json out;
  out["lattice"] = lattice_name;
  out["verdict"] = classifier::verdict_name(cert.verdict);
  out["characteristic"] = json_int(cert.characteristic);
  if (queried) out["queried"] = json_vec(queried->coords());
  if (cert.elliptic_witness) out["witness"] = json_vec(cert.elliptic_witness->coords());
  if (cert.exceptional_index) out["exceptional_index"] = *cert.exceptional_index;
  if (cert.condition) out["condition"] = conditions::condition_name(*cert.condition);
  if (cert.witness) out["condition_witness"] = witness_json(*cert.witness);
  if (cert.determinant) out["determinant"] = json_int(*cert.determinant);
  out["assumptions"] = cert.assumptions;
  out["reasons"] = cert.reasons;
  return out;
}

void print_certificate(std::ostream& out, const classifier::Certificate& cert,
                       const std::string& lattice_name,
                       const std::optional<DivisorClass>& queried) {
  out << "lattice: " << lattice_name << "\n";
  if (queried) out << "class: " << format_vec(queried->coords()) << "\n";
  out << "verdict: " << classifier::verdict_name(cert.verdict) << "\n";
  if (cert.elliptic_witness)
    out << "isotropic witness: " << format_vec(cert.elliptic_witness->coords()) << "\n";
  if (cert.exceptional_index) out << "exceptional lattice: " << *cert.exceptional_index << "\n";
  if (cert.witness) print_witness(out, *cert.witness);
  for (const auto& a : cert.assumptions) out << "assumption: " << a << "\n";
  for (const auto& r : cert.reasons) out << "reason: " << r << "\n";
}

int run_classify(const std::string& lattice_arg, const std::optional<std::string>& class_arg,
                 long long characteristic, bool as_json, std::ostream& out) {
  const LoadedLattice loaded = load_lattice(lattice_arg);
  std::optional<DivisorClass> queried;
  if (class_arg) queried = parse_class(*class_arg, loaded.lattice);
  const auto cert = classifier::classify(loaded.ample, queried, Int(characteristic), loaded.roots,
                                         search_options_from_env());
  if (as_json)
    out << certificate_json(cert, loaded.lattice->name(), queried).dump(2) << "\n";
  else
    print_certificate(out, cert, loaded.lattice->name(), queried);
  return cert.verdict == classifier::Verdict::Inconclusive ? kExitInconclusive : kExitOk;
}

int run_check(const std::string& condition, const std::string& lattice_arg,
              const std::optional<std::string>& class_arg, bool as_json, std::ostream& out) {
  const LoadedLattice loaded = load_lattice(lattice_arg);
  std::optional<conditions::ConditionWitness> witness;
  bool found = false;
  bool verified = false;
  std::optional<DivisorClass> queried;

  if (condition == "A1") {
    found = conditions::check_A1(*loaded.lattice);
    if (found) {
      witness = conditions::ConditionWitness{
          conditions::Condition::A1, {}, {{"det", discriminant(*loaded.lattice)}}};
      verified = conditions::verify(*witness, loaded.ample);
    }
  } else {
    if (!class_arg) throw InvalidInputError("--class is required for condition " + condition);
    queried = parse_class(*class_arg, loaded.lattice);
    if (condition == "A2")
      witness = conditions::check_A2(*queried, loaded.roots);
    else if (condition == "A3")
      witness = conditions::check_A3(*queried, loaded.roots);
    else if (condition == "R4")
      witness = conditions::check_rank4(*queried);
    else
      throw InvalidInputError("unknown condition '" + condition + "'");
    found = witness.has_value();
    if (witness) verified = conditions::verify(*witness, *queried);
  }

  if (as_json) {
    json result;
    result["lattice"] = loaded.lattice->name();
    result["condition"] = condition;
    result["found"] = found;
    result["exhaustive"] = true;
    if (queried) result["queried"] = json_vec(queried->coords());
    if (witness) {
      result["condition_witness"] = witness_json(*witness);
      result["verified"] = verified;
    }
    out << result.dump(2) << "\n";
  } else {
    out << "lattice: " << loaded.lattice->name() << "\n";
    if (queried) out << "class: " << format_vec(queried->coords()) << "\n";
    out << "condition " << condition << ": " << (found ? "holds" : "fails (exhaustive search)")
        << "\n";
    if (witness) {
      print_witness(out, *witness);
      out << "witness re-verified: " << (verified ? "yes" : "NO") << "\n";
    }
  }
  if (witness && !verified) return kExitInconclusive;
  return kExitOk;
}

int run_decompose(const std::string& lattice_arg, const std::string& class_arg, bool as_json,
                  std::ostream& out) {
  const LoadedLattice loaded = load_lattice(lattice_arg);
  const DivisorClass target = parse_class(class_arg, loaded.lattice);
  const auto decomposition = positivity::minimal_nef_decompose(target, loaded.roots);

  bool residual_negdef = true;
  if (!decomposition.residual.empty()) {
    IntMat gram(decomposition.residual.size(), IntVec(decomposition.residual.size(), 0));
    for (size_t i = 0; i < decomposition.residual.size(); ++i)
      for (size_t j = 0; j < decomposition.residual.size(); ++j)
        gram[i][j] = pair(decomposition.residual[i].root, decomposition.residual[j].root);
    const auto sig = signature(*Lattice::make(gram));
    residual_negdef = sig.positive == 0 && sig.zero == 0;
  }
  const bool reconstructs = decomposition.reconstruct() == target;

  if (as_json) {
    json result;
    result["lattice"] = loaded.lattice->name();
    result["class"] = json_vec(target.coords());
    json parts = json::array();
    for (const auto& p : decomposition.nef_parts)
      parts.push_back(json{{"part", json_vec(p.part.coords())},
                           {"multiplicity", json_int(p.multiplicity)},
                           {"minimal_verified", p.minimal_verified}});
    result["nef_parts"] = parts;
    json residual = json::array();
    for (const auto& r : decomposition.residual)
      residual.push_back(
          json{{"root", json_vec(r.root.coords())}, {"multiplicity", json_int(r.multiplicity)}});
    result["residual"] = residual;
    result["partial"] = decomposition.partial;
    if (decomposition.stuck) result["stuck"] = json_vec(decomposition.stuck->coords());
    result["reconstructs"] = reconstructs;
    result["residual_negative_definite"] = residual_negdef;
    out << result.dump(2) << "\n";
  } else {
    out << "lattice: " << loaded.lattice->name() << "\n";
    out << "class: " << format_vec(target.coords()) << "\n";
    for (const auto& p : decomposition.nef_parts)
      out << "nef part: " << p.multiplicity << " x " << format_vec(p.part.coords())
          << (p.minimal_verified ? "  [minimal nef]" : "  [minimality unverified]") << "\n";
    for (const auto& r : decomposition.residual)
      out << "residual: " << r.multiplicity << " x " << format_vec(r.root.coords()) << "\n";
    if (decomposition.partial)
      out << "partial: stuck at " << format_vec(decomposition.stuck->coords()) << "\n";
    out << "reconstruction identity: " << (reconstructs ? "ok" : "FAILED") << "\n";
    out << "residual negative definite: " << (residual_negdef ? "ok" : "FAILED") << "\n";
  }
  return decomposition.partial ? kExitInconclusive : kExitOk;
}

int run_isotropic(const std::string& lattice_arg, bool as_json, std::ostream& out) {
  const LoadedLattice loaded = load_lattice(lattice_arg);
  const auto verdict = qform::isotropic_exists(loaded.lattice, search_options_from_env());
  const char* status = verdict.status == qform::IsotropyStatus::Isotropic     ? "Isotropic"
                       : verdict.status == qform::IsotropyStatus::Anisotropic ? "Anisotropic"
                                                                              : "Unknown";
  const char* method = verdict.method == qform::IsotropyMethod::ClosedFormRank2 ? "ClosedFormRank2"
                       : verdict.method == qform::IsotropyMethod::LocalGlobal   ? "LocalGlobal"
                       : verdict.method == qform::IsotropyMethod::MeyerRank5    ? "MeyerRank5"
                                                                                : "BoundedSearch";
  if (as_json) {
    json result;
    result["lattice"] = loaded.lattice->name();
    result["status"] = status;
    result["method"] = method;
    if (verdict.witness) result["witness"] = json_vec(verdict.witness->coords());
    out << result.dump(2) << "\n";
  } else {
    out << "lattice: " << loaded.lattice->name() << "\n";
    out << "isotropy: " << status << " (" << method << ")\n";
    if (verdict.witness) out << "witness: " << format_vec(verdict.witness->coords()) << "\n";
  }
  return verdict.status == qform::IsotropyStatus::Unknown ? kExitInconclusive : kExitOk;
}

int run_roots(const std::string& lattice_arg, long long max_degree, bool as_json,
              std::ostream& out) {
  const LoadedLattice loaded = load_lattice(lattice_arg);
  const auto roots = qform::enumerate_norm_vectors(loaded.ample, -2, Int(max_degree));
  if (as_json) {
    json result;
    result["lattice"] = loaded.lattice->name();
    result["ample"] = json_vec(loaded.ample.coords());
    result["max_degree"] = max_degree;
    json list = json::array();
    for (const auto& r : roots) list.push_back(json_vec(r.coords()));
    result["roots"] = list;
    out << result.dump(2) << "\n";
  } else {
    out << "lattice: " << loaded.lattice->name() << "\n";
    out << "ample: " << format_vec(loaded.ample.coords()) << "\n";
    out << "(-2)-classes with 0 < ample degree <= " << max_degree << ": " << roots.size() << "\n";
    for (const auto& r : roots)
      out << "  " << format_vec(r.coords()) << "  degree " << pair(loaded.ample, r) << "\n";
  }
  return kExitOk;
}

int run_bound(long long a, long long b, long long c, bool as_json, std::ostream& out) {
  const Int n = conditions::regeneration_degree_bound(Int(a), Int(b), Int(c));
  if (as_json)
    out << json{{"bound", json_int(n)}}.dump(2) << "\n";
  else
    out << n << "\n";
  return kExitOk;
}

int run_corpus(bool as_json, std::ostream& out) {
  if (as_json) {
    json list = json::array();
    for (const auto& entry : classifier::corpus()) {
      const auto sig = signature(*entry.lattice);
      list.push_back(json{{"name", entry.name},
                          {"rank", entry.lattice->rank()},
                          {"discriminant", json_int(discriminant(*entry.lattice))},
                          {"signature", json::array({sig.positive, sig.negative, sig.zero})},
                          {"ample", json_vec(entry.ample.coords())},
                          {"roots", entry.roots.roots().size()}});
    }
    out << list.dump(2) << "\n";
  } else {
    for (const auto& entry : classifier::corpus()) {
      const auto sig = signature(*entry.lattice);
      out << entry.name << ": rank " << entry.lattice->rank() << ", signature (" << sig.positive
          << "," << sig.negative << "," << sig.zero << "), discriminant "
          << discriminant(*entry.lattice) << ", ample " << format_vec(entry.ample.coords())
          << ", " << entry.roots.roots().size() << " roots up to degree "
          << entry.roots.degree_bound() << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact certificates for curve existence conditions on K3 Picard lattices"};
  app.require_subcommand(1);

  std::string lattice_arg, class_arg, condition_arg;
  long long char_arg = 0, max_degree = 10, bound_a = 0, bound_b = 0, bound_c = 0;
  bool as_json = false;

  auto* classify = app.add_subcommand("classify", "emit a certificate for a lattice");
  classify->add_flag("--json", as_json, "machine-readable output");
  classify->add_option("--lattice", lattice_arg, "corpus name or document path")->required();
  auto* classify_class = classify->add_option("--class", class_arg, "queried class, comma-separated");
  classify->add_option("--char", char_arg, "ground field characteristic");

  auto* check = app.add_subcommand("check", "check one named condition");
  check->add_flag("--json", as_json, "machine-readable output");
  check->add_option("--condition", condition_arg, "A1, A2, A3 or R4")->required();
  check->add_option("--lattice", lattice_arg, "corpus name or document path")->required();
  auto* check_class = check->add_option("--class", class_arg, "class, comma-separated");

  auto* decompose = app.add_subcommand("decompose", "minimal nef decomposition");
  decompose->add_flag("--json", as_json, "machine-readable output");
  decompose->add_option("--lattice", lattice_arg, "corpus name or document path")->required();
  decompose->add_option("--class", class_arg, "class, comma-separated")->required();

  auto* isotropic = app.add_subcommand("isotropic", "isotropy verdict for a lattice");
  isotropic->add_flag("--json", as_json, "machine-readable output");
  isotropic->add_option("--lattice", lattice_arg, "corpus name or document path")->required();

  auto* roots = app.add_subcommand("roots", "list (-2)-classes up to a degree");
  roots->add_flag("--json", as_json, "machine-readable output");
  roots->add_option("--lattice", lattice_arg, "corpus name or document path")->required();
  roots->add_option("--max-degree", max_degree, "degree bound")->required();

  auto* bound = app.add_subcommand("bound", "regeneration degree bound");
  bound->add_flag("--json", as_json, "machine-readable output");
  bound->add_option("--a", bound_a, "square of the polarization")->required();
  bound->add_option("--b", bound_b, "mixed degree")->required();
  bound->add_option("--c", bound_c, "square of the curve class")->required();

  auto* corpus_cmd = app.add_subcommand("corpus", "list the bundled lattices");
  corpus_cmd->add_flag("--json", as_json, "machine-readable output");

  std::vector<const char*> argv;
  argv.push_back("k3cert");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (classify->parsed()) {
      std::optional<std::string> cls;
      if (classify_class->count() > 0) cls = class_arg;
      return run_classify(lattice_arg, cls, char_arg, as_json, out);
    }
    if (check->parsed()) {
      std::optional<std::string> cls;
      if (check_class->count() > 0) cls = class_arg;
      return run_check(condition_arg, lattice_arg, cls, as_json, out);
    }
    if (decompose->parsed()) return run_decompose(lattice_arg, class_arg, as_json, out);
    if (isotropic->parsed()) return run_isotropic(lattice_arg, as_json, out);
    if (roots->parsed()) return run_roots(lattice_arg, max_degree, as_json, out);
    if (bound->parsed()) return run_bound(bound_a, bound_b, bound_c, as_json, out);
    if (corpus_cmd->parsed()) return run_corpus(as_json, out);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  }
  err << "input error: no subcommand\n";
  return kExitInputError;
}

}  // namespace k3cert::cli
