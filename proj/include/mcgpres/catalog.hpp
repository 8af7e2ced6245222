#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcgpres/formula.hpp"
#include "mcgpres/presentation.hpp"

namespace mcgpres {

struct SurfaceParams {
  int g = 1;
  int n = 1;
};

struct InvalidSurface : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void check_params(int g, int n);

// Level-k elements of the boundary families.
//   P(i) = a_{i;k} a_i^-1     R(i) = r_{i;k}
//   S(l) = s_{l,k} d_l^-1     Sb(l) = sbar_{l,k} d_l^-1
//   Sbt(l,i) = C_i^-1 Sb(l) C_i with C_i = P(1)^-1 R(2) ... P(i-1)^-1 R(i)
//   K(m) = P(m-1) R(m-1)^-1 ... P(2) R(2)^-1 P(1)
// In loop mode the same names evaluate over the free basis z, w, yl, ybar.
enum class MacroMode { full, loops };
MacroFn level_macros(int g, int k, MacroMode mode);

enum class TargetKind { P, R, S, Sb };
enum class ConjKind { a, y, b, a_sub, r_sub, s, s_bar, d };

// One instance of "f x f^-1 = w d^tail" at level k.
struct ConjEntry {
  std::string family;
  std::string branch;
  Env env;
  int k = 0;
  Gen conj;
  TargetKind target;
  int target_index = 0;
  const Formula* rhs = nullptr;
  int tail_exp = 0;
  int tail_index = 0;
  bool quarantined = false;

  std::string kase() const;
  Word target_word(int g, MacroMode mode) const;
  Word rhs_word(int g, MacroMode mode) const;
  // f x f^-1 d^-tail w^-1
  Word relator(int g) const;
  // f x f^-1 w^-1, no central tail
  Word primed_relator(int g) const;
};

std::vector<ConjEntry> conjugation_table(int g, int k, int n);
// D1a -> D1a'; conjugation by d_l is tagged D1h'..D4h' by target
std::string primed_family(const ConjEntry& e);

// every branch of the boundary families with its printed d-tail
struct BranchInfo {
  std::string family;
  std::string branch;
  int tail_exp = 0;
  char tail_at = 'k';
};
std::vector<BranchInfo> branch_catalog();

std::vector<Gen> base_generators(int g);
std::vector<Gen> level_generators(int g, int k);
Alphabet full_alphabet(int g, int n);

Presentation base_presentation(int g);
std::vector<Relator> boundary_relators(int g, int n);
std::vector<Relator> primed_relators(int g, int n);
Presentation full_presentation(int g, int n);
Word sbar_tri_word(int j, int k, int i);
// Relators flagged for review, keyed by family and case
std::vector<std::pair<std::string, std::string>> quarantined_relators(int g, int n);

std::size_t generator_count(int g, int n);

// Family tags and a predicate telling whether the guard admits (g,n).
struct FamilyInfo {
  std::string tag;
  bool (*admits)(int g, int n);
};
const std::vector<FamilyInfo>& family_catalog();

// Relation schemas over the curve-twist alphabet.
enum class Schema { chain, lantern, braid, crosscap_product, crosscap_to_twists, kill_trivial,
                    twist_involution, slide_involution };

struct SignedCurve {
  std::string curve;
  char orient = '+';
  int eps = 1;
};

struct SchemaData {
  Schema kind;
  std::vector<SignedCurve> curves;
  std::vector<SignedCurve> boundary;
  std::string mu;
};

struct SchemaError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Word schema_instance(const SchemaData& d);

}  // namespace mcgpres
