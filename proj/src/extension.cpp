#include "mcgpres/extension.hpp"

#include <sstream>

#include "mcgpres/catalog.hpp"
#include "mcgpres/subgroup.hpp"

namespace mcgpres {

namespace {

Word realize(const ExtensionData& E, const Word& h) {
  if (E.iota.empty()) return h;
  return substitute(h, E.iota);
}

Gen lifted(const ExtensionData& E, const Gen& q) {
  auto it = E.lift.find(q);
  return it == E.lift.end() ? q : it->second;
}

}  // namespace

Presentation assemble_extension(const ExtensionData& E) {
  if (E.v.size() != E.Q.relators.size())
    throw TableGap("relator lift table has " + std::to_string(E.v.size()) + " entries for " +
                   std::to_string(E.Q.relators.size()) + " relators");
  Presentation G;
  G.genus = E.Q.genus;
  G.boundary = E.Q.boundary;
  std::map<Gen, Word> liftmap;
  for (auto& q : E.Q.alphabet.gens()) {
    G.alphabet.add(lifted(E, q));
    liftmap[q] = Word(lifted(E, q));
  }
  if (E.h_symbols.empty())
    for (auto& h : E.H.alphabet.gens()) G.alphabet.add(h);
  else
    for (auto& h : E.h_symbols) G.alphabet.add(h);

  for (auto& r : E.H.relators) G.add_relator(realize(E, r.word), "A", r.family);
  for (std::size_t s = 0; s < E.Q.relators.size(); ++s) {
    auto& r = E.Q.relators[s];
    G.add_relator(substitute(r.word, liftmap) * realize(E, E.v[s]).inverse(), r.family, r.kase);
  }
  for (auto& x : E.H.alphabet.gens())
    for (auto& y : E.Q.alphabet.gens()) {
      auto it = E.w.find({x, y});
      if (it == E.w.end()) throw TableGap("no conjugation entry for (" + x.name() + ", " + y.name() + ")");
      Word f(lifted(E, y));
      Word rel = realize(E, it->second).inverse() * f * realize(E, Word(x)) * f.inverse();
      auto lab = E.w_label.find({x, y});
      if (lab == E.w_label.end())
        G.add_relator(rel, "C", y.name() + " " + x.name());
      else
        G.add_relator(rel, lab->second.first, lab->second.second);
    }
  G.check();
  return G;
}

Presentation assemble_central_extension(const Presentation& P, const CentralAdjustment& adj) {
  if (adj.eps.size() != P.relators.size())
    throw TableGap("central adjustment has " + std::to_string(adj.eps.size()) + " entries for " +
                   std::to_string(P.relators.size()) + " relators");
  Presentation G = P;
  G.alphabet.add(adj.central);
  Word d(adj.central);
  for (std::size_t q = 0; q < G.relators.size(); ++q)
    G.relators[q].word = G.relators[q].word * d.pow(-adj.eps[q]);
  for (auto& x : P.alphabet.gens()) {
    if (x == adj.central) continue;
    G.add_relator(commutator(d, Word(x)), "central", "x=" + x.name());
  }
  return G;
}

std::string CompareReport::str() const {
  std::ostringstream os;
  os << "only in first: " << only_first.size() << ", only in second: " << only_second.size()
     << ", quarantined: " << quarantined.size() << "\n";
  for (auto& r : only_first) os << "  < " << r.family << " " << r.kase << ": " << r.word.str() << "\n";
  for (auto& r : only_second) os << "  > " << r.family << " " << r.kase << ": " << r.word.str() << "\n";
  for (auto& q : quarantined) os << "  quarantined: " << q << "\n";
  return os.str();
}

CompareReport compare_presentations(const Presentation& P1, const Presentation& P2,
                                    const std::set<RelatorKey>& quarantine) {
  std::set<Gen> a1(P1.alphabet.gens().begin(), P1.alphabet.gens().end());
  std::set<Gen> a2(P2.alphabet.gens().begin(), P2.alphabet.gens().end());
  if (a1 != a2) throw AlphabetMismatch("presentations use different generator sets");

  CompareReport rep;
  std::set<RelatorKey> seen;
  std::multimap<Word, const Relator*> pool;
  auto held = [&](const Relator& r) {
    if (!quarantine.count({r.family, r.kase})) return false;
    if (seen.insert({r.family, r.kase}).second) rep.quarantined.push_back(r.family + " " + r.kase);
    return true;
  };
  for (auto& r : P2.relators) {
    if (held(r)) continue;
    Word c = r.word.canonical_cyclic();
    if (!c.empty()) pool.emplace(c, &r);
  }
  for (auto& r : P1.relators) {
    if (held(r)) continue;
    Word c = r.word.canonical_cyclic();
    if (c.empty()) continue;
    auto it = pool.find(c);
    if (it == pool.end())
      rep.only_first.push_back(r);
    else
      pool.erase(it);
  }
  for (auto& [c, r] : pool) rep.only_second.push_back(*r);
  return rep;
}

ExtensionData push_extension_data(int g, int n) {
  check_params(g, n);
  if (n < 2) throw InvalidSurface("the point-pushing sequence needs n >= 2");
  int k = n - 1;
  ExtensionData E;
  E.Q = full_presentation(g, n - 1);
  E.H.genus = g;
  E.H.boundary = n;
  E.H.alphabet = push_basis_alphabet(g, n);
  E.h_symbols = level_generators(g, k);
  auto full = level_macros(g, k, MacroMode::full);
  for (auto& h : E.H.alphabet.gens()) {
    int i = h.indices()[0];
    switch (h.fam) {
      case Family::z: E.iota[h] = full("R", {i}); break;
      case Family::w: E.iota[h] = full("P", {i}); break;
      case Family::y_loop: E.iota[h] = full("S", {i}); break;
      case Family::ybar: E.iota[h] = full("Sb", {i}); break;
      default: break;
    }
  }
  // Q-relators lift to relators of the extension
  E.v.assign(E.Q.relators.size(), Word());
  for (auto& e : conjugation_table(g, k, n)) {
    Gen x = e.target_word(g, MacroMode::loops).letters().front().g;
    std::string fam = primed_family(e);
    E.w[{x, e.conj}] = e.rhs_word(g, MacroMode::loops);
    E.w_label[{x, e.conj}] = {fam, e.kase()};
  }
  return E;
}

CentralAdjustment push_central_adjustment(int g, int n, const Presentation& assembled,
                                            const std::map<RelatorKey, long>& eps_table) {
  (void)g;
  CentralAdjustment adj{gen_d(n - 1), {}};
  for (auto& r : assembled.relators) {
    long e = 0;
    if (!r.family.empty() && r.family.back() == '\'') {
      std::string branch = r.kase.substr(0, r.kase.find(';'));
      auto it = eps_table.find({r.family, branch});
      if (it != eps_table.end()) e = it->second;
    }
    adj.eps.push_back(e);
  }
  return adj;
}

ExtensionRun run_extension(int g, int n, const std::map<RelatorKey, long>& eps_table) {
  ExtensionRun run;
  run.assembled = assemble_extension(push_extension_data(g, n));
  run.central = assemble_central_extension(run.assembled,
                                           push_central_adjustment(g, n, run.assembled, eps_table));
  run.central.boundary = n;
  run.direct = full_presentation(g, n);
  std::set<RelatorKey> q;
  for (auto& k : quarantined_relators(g, n)) q.insert(k);
  run.diff = compare_presentations(run.central, run.direct, q);
  return run;
}

}  // namespace mcgpres
