#include <doctest.h>

#include "k3cert/document.hpp"
#include "k3cert/errors.hpp"

using namespace k3cert;
using namespace k3cert::cli;

namespace {

const char* kSample =
    "name: worked-example\n"
    "gram:\n"
    "0 1\n"
    "1 0\n"
    "ample: 2 1\n"
    "roots:\n"
    "-1 1\n"
    "root_degree_bound: 10\n"
    "complete: true\n";

}  // namespace

TEST_CASE("documents parse and realize") {
  const LatticeDocument doc = parse_document(kSample);
  CHECK(doc.name == "worked-example");
  CHECK(doc.gram == IntMat{{0, 1}, {1, 0}});
  CHECK(doc.ample == IntVec{2, 1});
  REQUIRE(doc.roots.has_value());
  CHECK(doc.roots->size() == 1);
  CHECK(doc.complete == true);

  const LoadedLattice loaded = realize(doc);
  CHECK(loaded.lattice->rank() == 2);
  CHECK(loaded.roots.complete_up_to_bound());
  CHECK(loaded.roots.roots().size() == 1);
}

TEST_CASE("document text round-trips") {
  const LatticeDocument doc = parse_document(kSample);
  const LatticeDocument again = parse_document(to_text(doc));
  CHECK(again.name == doc.name);
  CHECK(again.gram == doc.gram);
  CHECK(again.ample == doc.ample);
  CHECK(again.roots == doc.roots);
  CHECK(again.root_degree_bound == doc.root_degree_bound);
  CHECK(again.complete == doc.complete);
}

TEST_CASE("parse errors carry line and field") {
  try {
    parse_document("name: x\ngram:\n0 1\n1 zero\nample: 1 0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
    CHECK(e.field == "gram");
  }

  CHECK_THROWS_AS(parse_document("name: x\nample: 1 0\n"), ParseError);        // no gram
  CHECK_THROWS_AS(parse_document("mystery: 1\n"), ParseError);                 // unknown key
  CHECK_THROWS_AS(parse_document("name: x\n5 5\n"), ParseError);               // stray data
  CHECK_THROWS_AS(parse_document("gram:\n0 1\n1 0\ncomplete: maybe\nample: 1 0\n"), ParseError);
}

TEST_CASE("validation errors name the violated invariant") {
  // odd diagonal
  try {
    realize(parse_document("name: x\ngram:\n1\nample: 1\n"));
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.invariant == "even diagonal");
  }
  // asymmetric gram
  CHECK_THROWS_AS(realize(parse_document("name: x\ngram:\n0 2\n1 0\nample: 1 0\n")),
                  ValidationError);
  // ample of the wrong length
  CHECK_THROWS_AS(realize(parse_document("name: x\ngram:\n0 1\n1 0\nample: 1\n")),
                  ValidationError);
  // declared root that is not a root
  CHECK_THROWS_AS(
      realize(parse_document("name: x\ngram:\n0 1\n1 0\nample: 2 1\nroots:\n1 0\n")),
      ValidationError);
}

TEST_CASE("documents without roots enumerate them completely") {
  const LoadedLattice loaded = realize(parse_document("name: u\ngram:\n0 1\n1 0\nample: 2 1\n"));
  CHECK(loaded.roots.complete_up_to_bound());
  CHECK(loaded.roots.degree_bound() == 10);
  REQUIRE(loaded.roots.roots().size() == 1);
  CHECK(loaded.roots.roots()[0].coords() == IntVec{-1, 1});
}
