#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcgpres {

enum class Family : std::uint8_t {
  a,
  b,
  y,
  d,
  a_sub,
  r_sub,
  s,
  s_bar,
  s_bar_tri,
  x,
  y_loop,
  twist,
  cross_y,
  // free basis of the orientation-preserving loop subgroup
  z,
  w,
  ybar,
  // Reidemeister-Schreier symbol; label holds the defining word
  schreier,
  // opaque loop f(gamma); label is the acting element, label2 the loop
  image,
};

const char* family_tag(Family f);
Family family_from_tag(const std::string& tag);

struct Gen {
  Family fam = Family::a;
  int i = 0, j = 0, k = 0;
  // '+' or '-' for twist and crosscap-slide symbols, 0 otherwise
  char orient = 0;
  std::string label;
  std::string label2;

  auto operator<=>(const Gen&) const = default;
  bool operator==(const Gen&) const = default;

  int arity() const;
  std::string name() const;
  std::vector<int> indices() const;
};

Gen gen_a(int i);
Gen gen_b();
Gen gen_y();
Gen gen_d(int i);
Gen gen_asub(int i, int j);
Gen gen_rsub(int i, int j);
Gen gen_s(int i, int j);
Gen gen_sbar(int i, int j);
Gen gen_sbartri(int j, int k, int i);
Gen gen_x(int i);
Gen gen_yloop(int i);
Gen gen_z(int i);
Gen gen_w(int i);
Gen gen_ybar(int i);
Gen gen_twist(const std::string& curve, char orient);
Gen gen_cross_y(const std::string& mu, const std::string& alpha, char orient);
Gen gen_schreier(const std::string& def);
Gen gen_image(const std::string& acting, const std::string& loop);

Gen gen_from_indices(Family f, const std::vector<int>& idx);
Gen parse_gen(const std::string& s);

struct Letter {
  Gen g;
  long e = 1;
  bool operator==(const Letter&) const = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(const Gen& g, long e = 1);
  static Word reduce(const std::vector<Letter>& raw);

  const std::vector<Letter>& letters() const { return lt_; }
  bool empty() const { return lt_.empty(); }
  std::size_t runs() const { return lt_.size(); }
  long length() const;

  Word inverse() const;
  Word pow(long e) const;
  Word operator*(const Word& o) const;
  Word& operator*=(const Word& o);
  bool operator==(const Word& o) const { return lt_ == o.lt_; }
  bool operator<(const Word& o) const;

  bool contains(const Gen& g) const;
  // free-group exponent sum for one symbol
  long exponent(const Gen& g) const;

  Word cyclic_reduce() const;
  // least representative among rotations of w and w^-1
  Word canonical_cyclic() const;

  // letter-by-letter expansion, exponents +-1
  std::vector<std::pair<Gen, int>> expand() const;

  std::string str() const;

 private:
  std::vector<Letter> lt_;
};

Word reduce(const std::vector<Letter>& raw);
Word invert(const Word& w);
Word conjugate(const Word& w, const Word& g);
Word commutator(const Word& u, const Word& v);
Word parse_word(const std::string& s);

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Gen> gens);

  void add(const Gen& g);
  bool has(const Gen& g) const { return idx_.count(g) != 0; }
  std::size_t index(const Gen& g) const;
  std::size_t size() const { return gens_.size(); }
  const std::vector<Gen>& gens() const { return gens_; }
  const Gen& operator[](std::size_t i) const { return gens_[i]; }
  bool operator==(const Alphabet& o) const { return gens_ == o.gens_; }

 private:
  std::vector<Gen> gens_;
  std::map<Gen, std::size_t> idx_;
};

struct UnknownSymbol : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<long> exponent_vector(const Word& w, const Alphabet& A);

Word substitute(const Word& w, const std::map<Gen, Word>& m);

}  // namespace mcgpres
