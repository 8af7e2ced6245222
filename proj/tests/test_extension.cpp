#include <doctest.h>

#include "mcgpres/catalog.hpp"
#include "mcgpres/delta.hpp"
#include "mcgpres/extension.hpp"

using namespace mcgpres;

namespace {

Presentation cyclic(const Gen& s, int order) {
  Presentation P;
  P.alphabet.add(s);
  P.add_relator(Word(s, order), "order");
  return P;
}

ExtensionData toy(bool twisted) {
  Gen x = gen_x(1), y = gen_x(2);
  ExtensionData E;
  E.H = cyclic(x, 2);
  E.Q = cyclic(y, 2);
  E.v = {twisted ? Word(x) : Word()};
  E.w[{x, y}] = Word(x);
  return E;
}

std::vector<BigInt> big(std::initializer_list<int> v) {
  std::vector<BigInt> out;
  for (int q : v) out.push_back(q);
  return out;
}

}  // namespace

TEST_CASE("Klein four and Z/4 as extensions of Z/2 by Z/2") {
  auto V = assemble_extension(toy(false));
  CHECK(V.alphabet.size() == 2);
  CHECK(V.relators.size() == 3);
  CHECK(abelianization(V).torsion == big({2, 2}));
  CHECK(abelianization(V).free_rank == 0);

  auto C = assemble_extension(toy(true));
  CHECK(abelianization(C).torsion == big({4}));
  CHECK(abelianization(C).free_rank == 0);

  // the H part keeps exactly the H relators
  std::size_t a = 0;
  for (auto& r : C.relators)
    if (r.family == "A") ++a;
  CHECK(a == 1);
}

TEST_CASE("missing table entries are reported") {
  auto E = toy(false);
  E.v.clear();
  CHECK_THROWS_AS(assemble_extension(E), TableGap);
  E = toy(false);
  E.w.clear();
  CHECK_THROWS_AS(assemble_extension(E), TableGap);
}

TEST_CASE("central extension with zero exponents only adds commutators") {
  auto P = assemble_extension(toy(true));
  Gen d = gen_d(1);
  auto G = assemble_central_extension(P, {d, std::vector<long>(P.relators.size(), 0)});
  CHECK(G.alphabet.size() == P.alphabet.size() + 1);
  REQUIRE(G.relators.size() == P.relators.size() + P.alphabet.size());
  for (std::size_t q = 0; q < P.relators.size(); ++q) CHECK(G.relators[q].word == P.relators[q].word);
  CHECK(abelianization(G).free_rank == 1);
  CHECK_THROWS_AS(assemble_central_extension(P, {d, {0}}), TableGap);
}

TEST_CASE("central exponents enter the abelianization as a column") {
  auto P = assemble_extension(toy(true));
  std::vector<long> eps{3, 0, -1};
  auto G = assemble_central_extension(P, {gen_d(1), eps});
  std::vector<std::vector<BigInt>> M;
  for (std::size_t q = 0; q < P.relators.size(); ++q) {
    std::vector<BigInt> row;
    for (long e : exponent_vector(P.relators[q].word, P.alphabet)) row.push_back(e);
    row.push_back(-eps[q]);
    M.push_back(row);
  }
  CHECK(abelianization(G) == invariants_from_matrix(M, P.alphabet.size() + 1));
}

TEST_CASE("comparison up to inversion and rotation") {
  auto P = full_presentation(3, 2);
  CHECK(compare_presentations(P, P).empty());
  Presentation Q = P;
  Word w = Q.relators[0].word;
  Q.relators[0].word = w.inverse();
  if (!w.letters().empty()) Q.relators[0].word = conjugate(w.inverse(), Word(w.letters().front().g));
  CHECK(compare_presentations(P, Q).empty());
  Q.relators.pop_back();
  auto rep = compare_presentations(P, Q);
  CHECK(rep.only_first.size() == 1);
  CHECK(rep.only_second.empty());
  CHECK_THROWS_AS(compare_presentations(P, full_presentation(3, 3)), AlphabetMismatch);
}

TEST_CASE("point-pushing extension data shape") {
  for (int g = 1; g <= 4; ++g)
    for (int n = 2; n <= 4; ++n) {
      CAPTURE(g);
      CAPTURE(n);
      auto E = push_extension_data(g, n);
      auto P = assemble_extension(E);
      CHECK(P.alphabet.size() == generator_count(g, n - 1) + level_generators(g, n - 1).size());
      CHECK(E.v.size() == E.Q.relators.size());
    }
  CHECK_THROWS_AS(push_extension_data(3, 1), InvalidSurface);
}

TEST_CASE("the extension pipeline reproduces the direct presentations") {
  for (int g = 1; g <= 4; ++g)
    for (int n = 2; n <= 4; ++n) {
      CAPTURE(g);
      CAPTURE(n);
      auto run = run_extension(g, n, epsilon_table(g, n).values());
      CAPTURE(run.diff.str());
      CHECK(run.diff.empty());
      CHECK(run.central.alphabet.size() == run.direct.alphabet.size());
    }
}

TEST_CASE("a wrong exponent shows up in the diff") {
  auto t = epsilon_table(3, 3).values();
  t[{"D1e'", "m=i"}] = 0;
  auto run = run_extension(3, 3, t);
  CHECK_FALSE(run.diff.empty());
  CHECK(run.diff.only_first.size() == run.diff.only_second.size());
}
