#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcgpres/word.hpp"

namespace mcgpres {

using BigInt = boost::multiprecision::cpp_int;

struct Relator {
  Word word;
  std::string family;
  std::string kase;
  bool operator==(const Relator&) const = default;
};

struct Presentation {
  int genus = 0;
  int boundary = 0;
  Alphabet alphabet;
  std::vector<Relator> relators;
  // report notes, e.g. unverified consequences
  std::vector<std::string> flags;

  void add_relator(Word w, std::string family, std::string kase = "");
  // throws UnknownSymbol if a relator leaves the alphabet
  void check() const;
};

struct AbelianInvariants {
  std::vector<BigInt> torsion;
  std::size_t free_rank = 0;
  bool operator==(const AbelianInvariants&) const = default;
  std::string str() const;
};

struct TietzeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// one factor c * r^e * c^-1 of a consequence certificate
struct CertFactor {
  std::size_t relator;
  Word conj;
  int exp = 1;
};
using Certificate = std::vector<CertFactor>;

Presentation tietze_add_generator(const Presentation& P, const Gen& g,
                                  const Word& def);
// relator must contain g exactly once with exponent +-1
Presentation tietze_remove_generator(const Presentation& P, const Gen& g,
                                     std::size_t relator);
Presentation tietze_add_relator(const Presentation& P, const Word& w,
                                const std::optional<Certificate>& cert,
                                const std::string& family = "user");
// cert refers to the indices of P and must avoid the removed relator
Presentation tietze_remove_relator(const Presentation& P, std::size_t relator,
                                   const std::optional<Certificate>& cert);

Word certificate_product(const Presentation& P, const Certificate& c);

// Smith normal form diagonal of an integer matrix, nonzero entries only
std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> M);
AbelianInvariants invariants_from_matrix(const std::vector<std::vector<BigInt>>& M,
                                         std::size_t cols);
AbelianInvariants abelianization(const Presentation& P);

Presentation relabel(const Presentation& P, const std::map<Gen, Gen>& m);

// relators of length 1..max_len over x_1..x_gens
Presentation random_presentation(std::uint64_t seed, int gens, int relators, int max_len);

struct TietzeWalk {
  Presentation result;
  std::vector<std::string> moves;
};
// seeded random Tietze moves; new generators are x_100, x_101, ...
TietzeWalk random_tietze_walk(const Presentation& P, std::uint64_t seed, int moves);

}  // namespace mcgpres
