#include "k3cert/document.hpp"

#include <sstream>

#include "k3cert/errors.hpp"

namespace k3cert::cli {

namespace {

bool parse_int(const std::string& token, Int& out) {
  if (token.empty()) return false;
  size_t i = token[0] == '-' || token[0] == '+' ? 1 : 0;
  if (i == token.size()) return false;
  for (; i < token.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(token[i]))) return false;
  out = Int(token);
  return true;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

IntVec parse_row(const std::string& line, int line_no, const std::string& field) {
  IntVec row;
  for (const auto& token : split_ws(line)) {
    Int v;
    if (!parse_int(token, v)) throw ParseError(line_no, field, "'" + token + "' is not an integer");
    row.push_back(v);
  }
  return row;
}

bool is_key_line(const std::string& line, std::string& key, std::string& value) {
  const size_t colon = line.find(':');
  if (colon == std::string::npos) return false;
  key = line.substr(0, colon);
  if (key.find_first_of(" \t") != std::string::npos) return false;
  value = line.substr(colon + 1);
  const size_t start = value.find_first_not_of(" \t");
  value = start == std::string::npos ? "" : value.substr(start);
  const size_t end = value.find_last_not_of(" \t\r");
  if (end != std::string::npos) value = value.substr(0, end + 1);
  return true;
}

}  // namespace

LatticeDocument parse_document(const std::string& text) {
  LatticeDocument doc;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::string pending_block;  // "gram" or "roots"
  bool saw_gram = false, saw_ample = false;
  std::vector<IntVec> gram_rows;
  std::vector<IntVec> root_rows;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;  // blank
    if (line[first] == '#') continue;          // comment

    std::string key, value;
    if (is_key_line(line, key, value)) {
      pending_block.clear();
      if (key == "name") {
        doc.name = value;
      } else if (key == "gram") {
        if (!value.empty()) throw ParseError(line_no, "gram", "rows start on the following lines");
        pending_block = "gram";
        saw_gram = true;
      } else if (key == "ample") {
        doc.ample = parse_row(value, line_no, "ample");
        saw_ample = true;
      } else if (key == "roots") {
        if (!value.empty()) throw ParseError(line_no, "roots", "rows start on the following lines");
        pending_block = "roots";
        doc.roots.emplace();
      } else if (key == "root_degree_bound") {
        Int v;
        if (!parse_int(value, v))
          throw ParseError(line_no, "root_degree_bound", "'" + value + "' is not an integer");
        doc.root_degree_bound = v;
      } else if (key == "complete") {
        if (value == "true")
          doc.complete = true;
        else if (value == "false")
          doc.complete = false;
        else
          throw ParseError(line_no, "complete", "expected 'true' or 'false'");
      } else {
        throw ParseError(line_no, key, "unknown field");
      }
      continue;
    }

    if (pending_block == "gram") {
      gram_rows.push_back(parse_row(line, line_no, "gram"));
    } else if (pending_block == "roots") {
      root_rows.push_back(parse_row(line, line_no, "roots"));
    } else {
      throw ParseError(line_no, "", "unexpected data line outside a block");
    }
  }

  if (!saw_gram || gram_rows.empty()) throw ParseError(line_no, "gram", "missing Gram matrix");
  if (!saw_ample) throw ParseError(line_no, "ample", "missing ample class");
  doc.gram = std::move(gram_rows);
  if (doc.roots) *doc.roots = std::move(root_rows);
  return doc;
}

std::string to_text(const LatticeDocument& doc) {
  std::ostringstream out;
  out << "name: " << doc.name << "\n";
  out << "gram:\n";
  for (const auto& row : doc.gram) {
    for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << "\n";
  }
  out << "ample:";
  for (const auto& c : doc.ample) out << " " << c;
  out << "\n";
  if (doc.roots) {
    out << "roots:\n";
    for (const auto& row : *doc.roots) {
      for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
      out << "\n";
    }
  }
  if (doc.root_degree_bound) out << "root_degree_bound: " << *doc.root_degree_bound << "\n";
  if (doc.complete) out << "complete: " << (*doc.complete ? "true" : "false") << "\n";
  return out.str();
}

LoadedLattice realize(const LatticeDocument& doc) {
  LatticePtr lattice = Lattice::make(doc.gram, doc.name);
  if (static_cast<int>(doc.ample.size()) != lattice->rank())
    throw ValidationError("ample length equals rank",
                          "ample has " + std::to_string(doc.ample.size()) + " coordinates");
  DivisorClass ample(lattice, doc.ample);
  if (doc.roots) {
    std::vector<DivisorClass> roots;
    roots.reserve(doc.roots->size());
    for (const auto& row : *doc.roots) {
      if (static_cast<int>(row.size()) != lattice->rank())
        throw ValidationError("root length equals rank", "a root row has the wrong length");
      roots.emplace_back(lattice, row);
    }
    Int bound = doc.root_degree_bound.value_or(0);
    if (bound == 0)
      for (const auto& r : roots) bound = std::max(bound, pair(ample, r));
    auto set = positivity::RootSet::from_list(ample, std::move(roots), bound,
                                              doc.complete.value_or(false));
    return LoadedLattice{lattice, ample, std::move(set)};
  }
  const Int bound = doc.root_degree_bound.value_or(10);
  auto set = positivity::RootSet::enumerate(ample, bound);
  return LoadedLattice{lattice, ample, std::move(set)};
}

}  // namespace k3cert::cli
