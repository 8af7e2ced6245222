#include <doctest.h>

#include "mcgpres/word.hpp"

using namespace mcgpres;

TEST_CASE("free reduction and inverse") {
  Word w = parse_word("a1*a2*a2^-1*a1");
  CHECK(w.str() == "a1^2");
  CHECK((w * w.inverse()).empty());
  CHECK(parse_word("1").empty());
}

TEST_CASE("cyclic canonical form is rotation and inversion invariant") {
  Word w = parse_word("a1*y*a2^-1*b");
  Word r = parse_word("a2^-1*b*a1*y");
  CHECK(w.canonical_cyclic() == r.canonical_cyclic());
  CHECK(w.canonical_cyclic() == w.inverse().canonical_cyclic());
  CHECK(parse_word("a1*y*a1^-1").canonical_cyclic() == Word(gen_y()).canonical_cyclic());
}

TEST_CASE("symbol names round trip") {
  for (const char* s : {"a1", "b", "y", "d3", "a2_1", "r3_2", "s1_2", "sb1_3", "x2", "yl1",
                        "z4", "w3", "ybar2"}) {
    CHECK(parse_gen(s).name() == s);
  }
  CHECK(parse_gen("t[alpha1,+]").fam == Family::twist);
  CHECK(parse_gen("Y[mu1,alpha1,+]").fam == Family::cross_y);
}

TEST_CASE("substitution and exponent vectors") {
  Alphabet A({gen_a(1), gen_y()});
  Word w = parse_word("a1^3*y*a1^-1");
  CHECK(exponent_vector(w, A) == std::vector<long>{2, 1});
  std::map<Gen, Word> m{{gen_y(), parse_word("a1^2")}};
  CHECK(substitute(w, m).str() == "a1^4");
  CHECK_THROWS_AS(exponent_vector(parse_word("b"), A), UnknownSymbol);
}
