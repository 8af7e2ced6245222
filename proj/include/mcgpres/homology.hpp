#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "mcgpres/presentation.hpp"

namespace mcgpres {

// Mod-2 first homology of N_{g,n}: bit q < g is X_{q+1}, bit g+j-1 is H_j.
struct HomologySpace {
  int g = 1;
  int n = 1;

  HomologySpace(int g, int n);
  int dim() const { return g + n - 1; }
  std::uint64_t x_mask() const { return (std::uint64_t{1} << g) - 1; }
  int pairing(std::uint64_t u, std::uint64_t v) const;
  std::string basis_name(int q) const;
  std::string str(std::uint64_t v) const;
};

struct UnknownCurve : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CurveRecord {
  std::string name;
  std::uint64_t cls = 0;
  bool one_sided = false;
  std::string note;
};

// column j holds the image of basis vector j
struct Z2Matrix {
  int dim = 0;
  std::vector<std::uint64_t> col;

  static Z2Matrix identity(int d);
  std::uint64_t apply(std::uint64_t v) const;
  Z2Matrix operator*(const Z2Matrix& o) const;
  bool operator==(const Z2Matrix& o) const = default;
  bool is_identity() const;
  bool invertible() const;
  Z2Matrix inverse() const;
  Z2Matrix transpose() const;
};

class CurveLedger {
 public:
  // the ledger compiled into the library
  static const CurveLedger& builtin();
  explicit CurveLedger(const std::string& json_text);

  CurveRecord curve(const std::string& name, const HomologySpace& H) const;
  // neighbourhood boundary curves of a crosscap slide
  std::pair<std::string, std::string> slide_boundaries(const std::string& mu,
                                                       const std::string& alpha) const;

 private:
  struct Entry {
    std::string pattern;
    std::vector<std::string> terms;
    bool one_sided = false;
    std::string note;
    std::regex re;
    std::string vars;
  };
  struct Slide {
    std::string mu, alpha, delta1, delta2;
  };
  std::vector<Entry> entries_;
  std::vector<Slide> slides_;
};

CurveRecord curve_class(const std::string& name, int g, int n);

struct OneSidedTwist : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct Unassigned : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Z2Matrix twist_matrix(const CurveRecord& c, const HomologySpace& H);
Z2Matrix y_matrix(const CurveRecord& mu, const CurveRecord& alpha, const CurveRecord& delta1,
                  const CurveRecord& delta2, const HomologySpace& H);
bool preserves_form(const Z2Matrix& M, const HomologySpace& H);

// curve label behind a generator symbol, e.g. a_{2;1} -> "alpha2;1"
std::string curve_of(const Gen& s);
Z2Matrix assign(const Gen& s, const HomologySpace& H);

struct RelatorVerdict {
  bool ok = true;
  std::string witness;
};

class Representation {
 public:
  explicit Representation(HomologySpace H) : H_(H) {}
  const HomologySpace& space() const { return H_; }
  const Z2Matrix& matrix(const Gen& s);
  Z2Matrix image(const Word& w);
  RelatorVerdict verify(const Word& w);

 private:
  HomologySpace H_;
  std::map<Gen, Z2Matrix> cache_;
};

RelatorVerdict verify_relator(const Word& w, int g, int n);

struct FamilyReport {
  std::string family;
  std::size_t emitted = 0;
  std::size_t verified = 0;
  std::size_t failed = 0;
  std::string first_witness;
};

struct VerifyReport {
  int g = 0;
  int n = 0;
  std::vector<FamilyReport> families;
  std::vector<std::string> quarantine;
  std::size_t form_checked = 0;
  std::size_t form_failed = 0;
  bool ok() const;
  std::string str() const;
};

VerifyReport verify_presentation(const Presentation& P, int jobs = 1);
VerifyReport verify_presentation(int g, int n, int jobs = 1);

}  // namespace mcgpres
