#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mcgpres/presentation.hpp"

namespace mcgpres {

// 1 -> H -> G -> Q -> 1 with presentations of H and Q.
// H-generators are realized in the joint alphabet by iota; by default each
// H-generator stands for itself.
struct ExtensionData {
  Presentation H;
  Presentation Q;
  // Q-generator -> its lift; missing entries lift to themselves
  std::map<Gen, Gen> lift;
  // joint-alphabet symbols carrying H, when iota is not the identity
  std::vector<Gen> h_symbols;
  std::map<Gen, Word> iota;
  // per Q-relator, a word over H-generators
  std::vector<Word> v;
  // (H-generator x, Q-generator y) -> word over H-generators for y x y^-1
  std::map<std::pair<Gen, Gen>, Word> w;
  // optional family/case labels for (C) relators
  std::map<std::pair<Gen, Gen>, std::pair<std::string, std::string>> w_label;
};

struct TableGap : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// relators (A) H-relators, (B) lifted s = v_s, (C) y x y^-1 = w_{x,y}
Presentation assemble_extension(const ExtensionData& E);

struct CentralAdjustment {
  Gen central;
  // one exponent per relator of the presentation being adjusted
  std::vector<long> eps;
};

// r -> r d^-eps_r, then [d, x] for every generator x
Presentation assemble_central_extension(const Presentation& P, const CentralAdjustment& adj);

struct AlphabetMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using RelatorKey = std::pair<std::string, std::string>;

struct CompareReport {
  std::vector<Relator> only_first;
  std::vector<Relator> only_second;
  std::vector<std::string> quarantined;
  bool empty() const { return only_first.empty() && only_second.empty(); }
  std::string str() const;
};

// relators compared as multisets up to free and cyclic reduction and inversion;
// relators whose (family, case) is quarantined are set aside and listed
CompareReport compare_presentations(const Presentation& P1, const Presentation& P2,
                                    const std::set<RelatorKey>& quarantine = {});

// pi_1^+ of the once-more-punctured surface into M(N_{g,n-1}) with point
ExtensionData push_extension_data(int g, int n);
// eps per relator of assemble_extension(push_extension_data(g, n))
CentralAdjustment push_central_adjustment(int g, int n, const Presentation& assembled,
                                            const std::map<RelatorKey, long>& eps_table);

struct ExtensionRun {
  Presentation assembled;
  Presentation central;
  Presentation direct;
  CompareReport diff;
};
// the (g,n-1) -> (g,n) pipeline compared against full_presentation(g,n)
ExtensionRun run_extension(int g, int n, const std::map<RelatorKey, long>& eps_table);

}  // namespace mcgpres
