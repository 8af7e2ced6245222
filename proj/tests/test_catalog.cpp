#include <doctest.h>

#include "mcgpres/catalog.hpp"

using namespace mcgpres;

TEST_CASE("generator counts") {
  CHECK(full_presentation(3, 2).alphabet.size() == 9);
  CHECK(generator_count(1, 1) == 0);
  CHECK(generator_count(4, 1) == 5);
  // 3 + 2 + (2 + 3) + (2 + 3 + 1 + 1)
  CHECK(generator_count(3, 3) == 17);
}

TEST_CASE("small genus abelianizations") {
  auto g2 = abelianization(base_presentation(2));
  CHECK(g2.free_rank == 1);
  CHECK(g2.torsion == std::vector<BigInt>{2});
  auto g3 = abelianization(base_presentation(3));
  CHECK(g3.free_rank == 0);
  CHECK(g3.torsion == std::vector<BigInt>{2, 2});
  auto g7 = abelianization(base_presentation(7));
  CHECK(g7.free_rank == 0);
  CHECK(g7.torsion == std::vector<BigInt>{2});
}

TEST_CASE("macros range check") {
  auto M = level_macros(3, 2, MacroMode::full);
  CHECK_THROWS(M("P", {3}));
  CHECK_THROWS(M("S", {2}));
  CHECK_NOTHROW(M("Sbt", {1, 3}));
  CHECK(M("Sbt", {1, 1}) == M("Sb", {1}));
}

TEST_CASE("every relator stays in the alphabet") {
  for (int g = 1; g <= 8; ++g)
    for (int n = 0; n <= 4; ++n) CHECK_NOTHROW(full_presentation(g, n).check());
}

TEST_CASE("closed surface is flagged") {
  auto P = full_presentation(3, 0);
  CHECK(P.boundary == 1);
  CHECK_FALSE(P.flags.empty());
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(full_presentation(0, 1), InvalidSurface);
  CHECK_THROWS_AS(full_presentation(2, -1), InvalidSurface);
}
