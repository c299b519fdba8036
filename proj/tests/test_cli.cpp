#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "k3cert/cli.hpp"

using k3cert::cli::kExitInconclusive;
using k3cert::cli::kExitInputError;
using k3cert::cli::kExitOk;
using k3cert::cli::run;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("classify on corpus names") {
  const auto r = invoke({"classify", "--lattice", "bryan-leung"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("verdict: Elliptic") != std::string::npos);
  CHECK(r.out.find("(0,1)") != std::string::npos);
}

TEST_CASE("check A2 on the Bryan-Leung multiples") {
  const auto hit = invoke({"check", "--condition", "A2", "--lattice", "bryan-leung", "--class", "3,9"});
  CHECK(hit.code == kExitOk);
  CHECK(hit.out.find("holds") != std::string::npos);

  const auto miss = invoke({"check", "--condition", "A2", "--lattice", "bryan-leung", "--class", "1,3"});
  CHECK(miss.code == kExitOk);
  CHECK(miss.out.find("fails (exhaustive search)") != std::string::npos);
}

TEST_CASE("bound subcommand") {
  const auto r = invoke({"bound", "--a", "2", "--b", "1", "--c", "-2"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "4\n");

  const auto bad = invoke({"bound", "--a", "2", "--b", "1", "--c", "2"});
  CHECK(bad.code == kExitInputError);
}

TEST_CASE("decompose emits the worked example") {
  const auto r = invoke({"decompose", "--lattice", "U", "--class", "1,1", "--json"});
  CHECK(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc["reconstructs"] == true);
  CHECK(doc["residual_negative_definite"] == true);
  CHECK(doc["partial"] == false);
  REQUIRE(doc["nef_parts"].size() == 1);
  CHECK(doc["nef_parts"][0]["multiplicity"] == 2);
  CHECK(doc["nef_parts"][0]["part"] == json::array({1, 0}));
}

TEST_CASE("json and text verdicts agree across the corpus") {
  const auto names = {"U", "deg2", "deg4", "deg6", "bryan-leung", "rank4-exceptional-1",
                      "rank4-exceptional-2"};
  for (const std::string name : names) {
    const auto plain = invoke({"classify", "--lattice", name});
    const auto machine = invoke({"classify", "--lattice", name, "--json"});
    REQUIRE(machine.code == plain.code);
    const json doc = json::parse(machine.out);
    const std::string verdict = doc["verdict"];
    CHECK(plain.out.find("verdict: " + verdict) != std::string::npos);
  }
}

TEST_CASE("invalid documents exit with the input-error code") {
  const auto missing = invoke({"classify", "--lattice", "/nonexistent/path"});
  CHECK(missing.code == kExitInputError);
  CHECK_FALSE(missing.err.empty());

  const std::string path = "/tmp/k3cert_bad_doc.txt";
  {
    std::ofstream f(path);
    f << "name: bad\ngram:\n1\nample: 1\n";  // odd diagonal
  }
  const auto invalid = invoke({"classify", "--lattice", path});
  CHECK(invalid.code == kExitInputError);
  CHECK(invalid.err.find("even diagonal") != std::string::npos);

  const auto wrong_class = invoke({"classify", "--lattice", "U", "--class", "1,2,3"});
  CHECK(wrong_class.code == kExitInputError);

  const auto no_args = invoke({});
  CHECK(no_args.code == kExitInputError);
}

TEST_CASE("inconclusive verdicts exit with code 2") {
  // the degree-minimal class on the exceptional lattice admits no triple
  const auto r = invoke({"classify", "--lattice", "rank4-exceptional-1", "--class", "1,0,0,0"});
  CHECK(r.code == kExitInconclusive);
  CHECK(r.out.find("verdict: Inconclusive") != std::string::npos);
}

TEST_CASE("documents load from disk through the cli") {
  const std::string path = "/tmp/k3cert_doc_u.txt";
  {
    std::ofstream f(path);
    f << "name: file-u\ngram:\n0 1\n1 0\nample: 2 1\n";
  }
  const auto r = invoke({"isotropic", "--lattice", path, "--json"});
  CHECK(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc["status"] == "Isotropic");
  CHECK(doc["method"] == "ClosedFormRank2");
}

TEST_CASE("roots subcommand lists the complete slab") {
  const auto r = invoke({"roots", "--lattice", "U", "--max-degree", "3", "--json"});
  CHECK(r.code == kExitOk);
  const json doc = json::parse(r.out);
  REQUIRE(doc["roots"].size() == 1);
  CHECK(doc["roots"][0] == json::array({-1, 1}));
}

TEST_CASE("corpus subcommand lists all bundled lattices") {
  const auto r = invoke({"corpus", "--json"});
  CHECK(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc.size() == 7);
}

TEST_CASE("help is not an error") {
  const auto r = invoke({"--help"});
  CHECK(r.code == kExitOk);
  CHECK_FALSE(r.out.empty());
}

TEST_CASE("garbage documents are parse errors, not crashes") {
  const std::string path = "/tmp/k3cert_garbage.txt";
  for (const std::string content :
       {"\x01\x02\x03 binary", "gram:\n0 1\n", "name only\n", "gram:\nample: 1\n",
        "name: x\ngram:\n0 1\n1 0\n0 0\nample: 1 0\n"}) {
    std::ofstream f(path);
    f << content;
    f.close();
    const auto r = invoke({"classify", "--lattice", path});
    CHECK(r.code == kExitInputError);
  }
}

TEST_CASE("negative characteristics are rejected") {
  const auto r = invoke({"classify", "--lattice", "U", "--char", "-1"});
  CHECK(r.code == kExitInputError);
}

TEST_CASE("the search cap honors the environment variable") {
  setenv("K3CERT_SEARCH_CAP", "50", 1);
  const auto r = invoke({"isotropic", "--lattice", "U"});
  CHECK(r.code == kExitOk);
  setenv("K3CERT_SEARCH_CAP", "not-a-number", 1);
  const auto bad = invoke({"isotropic", "--lattice", "U"});
  CHECK(bad.code == kExitInputError);
  unsetenv("K3CERT_SEARCH_CAP");
}

TEST_CASE("emitted witnesses re-verify through check") {
  const auto cert = invoke({"classify", "--lattice", "bryan-leung", "--class", "3,9", "--json"});
  // elliptic lattices certify without the condition machinery
  const json doc = json::parse(cert.out);
  CHECK(doc["verdict"] == "Elliptic");

  const auto r4 = invoke(
      {"classify", "--lattice", "rank4-exceptional-2", "--class", "3,0,0,0", "--json"});
  CHECK(r4.code == kExitOk);
  const json r4doc = json::parse(r4.out);
  REQUIRE(r4doc["verdict"] == "Rank4Exceptional");
  std::string cls;
  for (const auto& c : r4doc["queried"]) {
    if (!cls.empty()) cls += ",";
    cls += c.dump();
  }
  const auto again = invoke(
      {"check", "--condition", "R4", "--lattice", "rank4-exceptional-2", "--class", cls, "--json"});
  CHECK(again.code == kExitOk);
  const json adoc = json::parse(again.out);
  CHECK(adoc["found"] == true);
  CHECK(adoc["verified"] == true);
}
