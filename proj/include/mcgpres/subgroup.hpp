#pragma once

#include <map>
#include <vector>

#include "mcgpres/word.hpp"

namespace mcgpres {

// Folded Stallings graph of a subgroup of the free group on `ambient`.
class SubgroupGraph {
 public:
  struct Edge {
    int from;
    Gen label;
    int to;
    auto operator<=>(const Edge&) const = default;
  };

  static SubgroupGraph fold(const std::vector<Word>& gens, const Alphabet& ambient);

  const Alphabet& ambient() const { return ambient_; }
  int base() const { return 0; }
  std::size_t vertex_count() const { return out_.size(); }
  std::size_t edge_count() const;
  std::vector<Edge> edges() const;
  long rank() const;
  bool contains(const Word& w) const;
  // rooted, label-preserving isomorphism
  bool isomorphic(const SubgroupGraph& o) const;
  bool is_folded() const;

 private:
  Alphabet ambient_;
  std::vector<std::map<Gen, int>> out_, in_;
};

// homomorphism from the ambient free group to Z/2
struct Character {
  Alphabet ambient;
  std::map<Gen, int> value;
  int operator()(const Word& w) const;
  bool trivial() const;
};

struct IndexError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ambient basis x_1..x_g, y_1..y_{n-2} of pi_1(N_{g,n-1})
Alphabet loop_alphabet(int g, int n);
// x_i -> 1, y_l -> 0
Character orientation_character(int g, int n);

std::vector<Word> schreier_transversal(const Character& ch);
// generators rep(xu)^-1 x u, nontrivial ones only, in (u, x) order
std::vector<Word> reidemeister_schreier_generators(const Character& ch);
// B-symbol for a Schreier generator, named by its defining word
Gen schreier_symbol(const Word& def);
Word schreier_definition(const Gen& s);
Word rewrite_in_subgroup(const Word& w, const Character& ch);

// free basis z_i = x_i^2, w_i = x_{i+1} x_i, yl_l = y_l, ybar_l = x_1^-1 y_l x_1
Alphabet push_basis_alphabet(int g, int n);
std::map<Gen, Word> push_basis_definitions(int g, int n);
std::vector<Word> push_basis(int g, int n);
// Schreier symbols of the orientation character written in the basis above
std::map<Gen, Word> schreier_to_push_basis(int g, int n);
// w must lie in the orientation subgroup
Word rewrite_in_push_basis(const Word& w, int g, int n);

// fold(B) against fold(push basis) and the Nielsen-Schreier rank 2g+2n-5
struct BasisCheck {
  int g = 0;
  int n = 0;
  std::vector<Word> B;
  long rank_B = 0;
  long rank_push = 0;
  long expected = 0;
  bool isomorphic = false;
  bool ok() const { return isomorphic && rank_B == expected && rank_push == expected; }
  std::string str() const;
};
BasisCheck check_subgroup_basis(int g, int n);

}  // namespace mcgpres
