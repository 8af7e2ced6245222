#include <doctest.h>

#include "mcgpres/subgroup.hpp"

using namespace mcgpres;

TEST_CASE("folding small subgroups") {
  Alphabet A({gen_x(1)});
  auto G = SubgroupGraph::fold({parse_word("x1^2")}, A);
  CHECK(G.vertex_count() == 2);
  CHECK(G.rank() == 1);
  CHECK(SubgroupGraph::fold({}, A).rank() == 0);
  Alphabet B = loop_alphabet(2, 3);
  Word w = parse_word("x1*yl1*x2^-1");
  CHECK(SubgroupGraph::fold({w, w}, B).isomorphic(SubgroupGraph::fold({w}, B)));
  // x1 x2 x1^-1 and x1 x2^2 x1^-1 generate a rank-1 subgroup
  auto H = SubgroupGraph::fold({parse_word("x1*x2*x1^-1"), parse_word("x1*x2^2*x1^-1")}, B);
  CHECK(H.rank() == 1);
  CHECK(H.is_folded());
  CHECK(H.contains(parse_word("x1*x2^-5*x1^-1")));
  CHECK_FALSE(H.contains(parse_word("x2")));
}

TEST_CASE("orientation subgroup membership") {
  auto ch = orientation_character(3, 4);
  auto G = SubgroupGraph::fold(reidemeister_schreier_generators(ch), ch.ambient);
  CHECK_FALSE(G.contains(parse_word("x1")));
  CHECK(G.contains(parse_word("x1^-1*yl1*x1")));
  Word u = parse_word("x2*x3"), v = parse_word("yl2*x1^-2");
  REQUIRE(G.contains(u));
  REQUIRE(G.contains(v));
  CHECK(G.contains(u * v));
  CHECK_THROWS_AS(G.contains(parse_word("z1")), UnknownSymbol);
}

TEST_CASE("Schreier transversal and generators") {
  auto ch = orientation_character(3, 3);
  auto U = schreier_transversal(ch);
  REQUIRE(U.size() == 2);
  CHECK(U[1] == parse_word("x1"));
  std::vector<std::string> B;
  for (auto& b : reidemeister_schreier_generators(ch)) B.push_back(b.str());
  std::vector<std::string> expect = {"x1^-1*x2", "x1^-1*x3", "yl1", "x1^2", "x2*x1",
                                     "x3*x1", "x1^-1*yl1*x1"};
  CHECK(B == expect);

  Character triv{loop_alphabet(2, 3), {}};
  CHECK(schreier_transversal(triv).size() == 1);
  CHECK(reidemeister_schreier_generators(triv).size() == 3);
}

TEST_CASE("rewriting into the subgroup") {
  auto ch = orientation_character(3, 3);
  CHECK(rewrite_in_subgroup(parse_word("x1^2"), ch) == Word(schreier_symbol(parse_word("x1^2"))));
  CHECK(rewrite_in_push_basis(parse_word("x1^2"), 3, 3) == Word(gen_z(1)));
  CHECK(rewrite_in_push_basis(parse_word("x2*x1"), 3, 3) == Word(gen_w(1)));
  CHECK_THROWS_AS(rewrite_in_subgroup(parse_word("x2"), ch), IndexError);

  Word u = parse_word("x3*x2^-1*yl1"), v = parse_word("x1^-1*yl1^2*x3^3");
  auto back = [&](const Word& r) {
    std::map<Gen, Word> def;
    for (auto& l : r.letters()) def[l.g] = schreier_definition(l.g);
    return substitute(r, def);
  };
  CHECK(back(rewrite_in_subgroup(u, ch)) == u);
  CHECK(rewrite_in_subgroup(u * v, ch) == rewrite_in_subgroup(u, ch) * rewrite_in_subgroup(v, ch));
  CHECK(substitute(rewrite_in_push_basis(u * v, 3, 3), push_basis_definitions(3, 3)) == u * v);
}

TEST_CASE("Schreier generators and the push basis fold to the same graph") {
  for (int g = 1; g <= 6; ++g)
    for (int n = 2; n <= 5; ++n) {
      CAPTURE(g);
      CAPTURE(n);
      auto ch = orientation_character(g, n);
      auto B = reidemeister_schreier_generators(ch);
      auto GB = SubgroupGraph::fold(B, ch.ambient);
      auto GP = SubgroupGraph::fold(push_basis(g, n), ch.ambient);
      CHECK(GB.isomorphic(GP));
      CHECK(GB.rank() == 2 * g + 2 * n - 5);
      CHECK(push_basis(g, n).size() == static_cast<std::size_t>(2 * g + 2 * n - 5));
      for (auto& w : push_basis(g, n)) CHECK(GB.contains(w));
      for (auto& w : B) CHECK(GP.contains(w));
    }
}

TEST_CASE("Schreier symbols expressed in the push basis") {
  auto defs = push_basis_definitions(4, 4);
  for (auto& [s, w] : schreier_to_push_basis(4, 4))
    CHECK(substitute(w, defs) == schreier_definition(s));
}
