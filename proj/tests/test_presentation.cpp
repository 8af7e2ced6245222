#include <doctest.h>

#include "mcgpres/catalog.hpp"
#include "mcgpres/serialize.hpp"

using namespace mcgpres;

TEST_CASE("Smith form of small matrices") {
  std::vector<std::vector<BigInt>> M = {{2, 4}, {6, 8}};
  auto d = smith_diagonal(M);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 2);
  CHECK(d[1] == 4);
  auto inv = invariants_from_matrix({{2, 0, 0}}, 3);
  CHECK(inv.free_rank == 2);
  CHECK(inv.torsion == std::vector<BigInt>{2});
}

TEST_CASE("Klein bottle group abelianizes to Z + Z/2") {
  Presentation P;
  P.alphabet = Alphabet({gen_a(1), gen_y()});
  P.add_relator(parse_word("y*a1*y^-1*a1"), "B5");
  auto inv = abelianization(P);
  CHECK(inv.free_rank == 1);
  CHECK(inv.torsion == std::vector<BigInt>{2});
}

TEST_CASE("Tietze moves preserve abelianization") {
  Presentation P = base_presentation(3);
  auto before = abelianization(P);
  Presentation Q = tietze_add_generator(P, gen_x(1), parse_word("a1*y"));
  CHECK(abelianization(Q) == before);
  Presentation R = tietze_remove_generator(Q, gen_x(1), Q.relators.size() - 1);
  CHECK(abelianization(R) == before);
  CHECK_FALSE(R.alphabet.has(gen_x(1)));
}

TEST_CASE("relators added without certificate are flagged") {
  Presentation P = base_presentation(3);
  auto Q = tietze_add_relator(P, parse_word("a1^2"), std::nullopt);
  REQUIRE_FALSE(Q.flags.empty());
  Certificate c{{0, parse_word("y"), 1}};
  auto R = tietze_add_relator(P, certificate_product(P, c), c);
  CHECK(R.flags.empty());
}

TEST_CASE("serialization round trips byte for byte") {
  Presentation P = full_presentation(3, 3);
  for (Format f : {Format::structured, Format::algebra_text}) {
    std::string s = dump(P, f);
    Presentation Q = load(s, f);
    CHECK(dump(Q, f) == s);
    CHECK(Q.relators == P.relators);
  }
}

TEST_CASE("random Tietze walks keep the abelian invariants") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CAPTURE(seed);
    auto P = random_presentation(seed, 3, 3, 6);
    auto walk = random_tietze_walk(P, seed * 7919, 12);
    CHECK(walk.moves.size() == 12);
    CHECK(abelianization(walk.result) == abelianization(P));
    CHECK(walk.result.flags.empty());
  }
  auto P = full_presentation(2, 1);
  auto walk = random_tietze_walk(P, 5, 10);
  CHECK(abelianization(walk.result) == abelianization(P));
}

TEST_CASE("random walks are reproducible") {
  auto P = random_presentation(11, 2, 2, 5);
  CHECK(random_presentation(11, 2, 2, 5).relators == P.relators);
  CHECK(random_tietze_walk(P, 3, 8).moves == random_tietze_walk(P, 3, 8).moves);
}
