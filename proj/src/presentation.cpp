#include "mcgpres/presentation.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace mcgpres {

void Presentation::add_relator(Word w, std::string family, std::string kase) {
  relators.push_back({std::move(w), std::move(family), std::move(kase)});
}

void Presentation::check() const {
  for (auto& r : relators)
    for (auto& l : r.word.letters()) alphabet.index(l.g);
}

std::string AbelianInvariants::str() const {
  std::string s = "torsion [";
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (i) s += ",";
    s += torsion[i].str();
  }
  s += "] free_rank " + std::to_string(free_rank);
  return s;
}

Presentation tietze_add_generator(const Presentation& P, const Gen& g,
                                  const Word& def) {
  if (P.alphabet.has(g)) throw TietzeError("generator already present: " + g.name());
  if (def.contains(g)) throw TietzeError("definition uses the new generator");
  for (auto& l : def.letters())
    if (!P.alphabet.has(l.g)) throw TietzeError("definition leaves alphabet: " + l.g.name());
  Presentation Q = P;
  Q.alphabet.add(g);
  Q.add_relator(Word(g) * def.inverse(), "tietze", "def " + g.name());
  return Q;
}

Presentation tietze_remove_generator(const Presentation& P, const Gen& g,
                                     std::size_t relator) {
  if (relator >= P.relators.size()) throw TietzeError("no such relator");
  const Word& r = P.relators[relator].word;
  long occ = 0;
  for (auto& l : r.letters())
    if (l.g == g) occ += std::abs(l.e);
  if (occ != 1)
    throw TietzeError("relator does not define " + g.name() + " (occurs " +
                      std::to_string(occ) + " times)");
  // r = u g^e v, so g = (v u)^(-e)
  const auto& L = r.letters();
  std::size_t pos = 0;
  while (L[pos].g != g) ++pos;
  int e = static_cast<int>(L[pos].e);
  Word u = Word::reduce({L.begin(), L.begin() + pos});
  Word v = Word::reduce({L.begin() + pos + 1, L.end()});
  Word val = (v * u).pow(-e);

  Presentation Q;
  Q.genus = P.genus;
  Q.boundary = P.boundary;
  Q.flags = P.flags;
  for (auto& h : P.alphabet.gens())
    if (h != g) Q.alphabet.add(h);
  std::map<Gen, Word> sub{{g, val}};
  for (std::size_t t = 0; t < P.relators.size(); ++t) {
    if (t == relator) continue;
    auto rr = P.relators[t];
    rr.word = substitute(rr.word, sub);
    Q.relators.push_back(std::move(rr));
  }
  return Q;
}

Word certificate_product(const Presentation& P, const Certificate& c) {
  Word w;
  for (auto& f : c) {
    if (f.relator >= P.relators.size()) throw TietzeError("certificate relator out of range");
    w *= conjugate(P.relators[f.relator].word.pow(f.exp), f.conj);
  }
  return w;
}

Presentation tietze_add_relator(const Presentation& P, const Word& w,
                                const std::optional<Certificate>& cert,
                                const std::string& family) {
  for (auto& l : w.letters())
    if (!P.alphabet.has(l.g)) throw TietzeError("relator leaves alphabet: " + l.g.name());
  Presentation Q = P;
  if (cert) {
    if (!(certificate_product(P, *cert) == w))
      throw TietzeError("certificate does not reduce to the claimed relator");
    Q.add_relator(w, family, "certified");
  } else {
    Q.add_relator(w, family, "unverified");
    Q.flags.push_back("unverified consequence: " + w.str());
  }
  return Q;
}

Presentation tietze_remove_relator(const Presentation& P, std::size_t relator,
                                   const std::optional<Certificate>& cert) {
  if (relator >= P.relators.size()) throw TietzeError("no such relator");
  Presentation Q = P;
  if (cert) {
    for (auto& f : *cert)
      if (f.relator == relator) throw TietzeError("certificate uses the removed relator");
    if (!(certificate_product(P, *cert) == P.relators[relator].word))
      throw TietzeError("certificate does not reduce to the removed relator");
  } else {
    Q.flags.push_back("unverified consequence: " + P.relators[relator].word.str());
  }
  Q.relators.erase(Q.relators.begin() + static_cast<long>(relator));
  return Q;
}

namespace {

BigInt babs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

}  // namespace

std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> M) {
  std::vector<BigInt> diag;
  std::size_t rows = M.size();
  std::size_t cols = rows ? M[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry in the remaining block
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (M[i][j] != 0 && (pr == rows || babs(M[i][j]) < babs(M[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(M[t], M[pr]);
    for (auto& row : M) std::swap(row[t], row[pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (M[i][t] == 0) continue;
        BigInt q = M[i][t] / M[t][t];
        for (std::size_t j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
        if (M[i][t] != 0) {
          std::swap(M[t], M[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (M[t][j] == 0) continue;
        BigInt q = M[t][j] / M[t][t];
        for (std::size_t i = t; i < rows; ++i) M[i][j] -= q * M[i][t];
        if (M[t][j] != 0) {
          for (auto& row : M) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the rest of the block
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (M[i][j] % M[t][t] != 0) {
            for (std::size_t c = t; c < cols; ++c) M[t][c] += M[i][c];
            clean = false;
            break;
          }
    }
    diag.push_back(babs(M[t][t]));
    ++t;
  }
  return diag;
}

AbelianInvariants invariants_from_matrix(const std::vector<std::vector<BigInt>>& M,
                                         std::size_t cols) {
  auto diag = smith_diagonal(M);
  AbelianInvariants A;
  A.free_rank = cols - diag.size();
  for (auto& d : diag)
    if (d > 1) A.torsion.push_back(d);
  std::sort(A.torsion.begin(), A.torsion.end());
  return A;
}

AbelianInvariants abelianization(const Presentation& P) {
  std::vector<std::vector<BigInt>> M;
  for (auto& r : P.relators) {
    auto v = exponent_vector(r.word, P.alphabet);
    M.emplace_back(v.begin(), v.end());
  }
  return invariants_from_matrix(M, P.alphabet.size());
}

Presentation relabel(const Presentation& P, const std::map<Gen, Gen>& m) {
  Presentation Q;
  Q.genus = P.genus;
  Q.boundary = P.boundary;
  Q.flags = P.flags;
  std::set<Gen> seen;
  std::map<Gen, Word> sub;
  for (auto& g : P.alphabet.gens()) {
    auto it = m.find(g);
    Gen h = it == m.end() ? g : it->second;
    if (!seen.insert(h).second)
      throw TietzeError("relabel map is not injective at " + h.name());
    Q.alphabet.add(h);
    if (h != g) sub[g] = Word(h);
  }
  for (auto& r : P.relators) Q.relators.push_back({substitute(r.word, sub), r.family, r.kase});
  return Q;
}

namespace {

Word random_word(std::mt19937_64& rng, const std::vector<Gen>& gens, int len) {
  std::vector<Letter> raw;
  if (gens.empty()) return {};
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::bernoulli_distribution sign(0.5);
  for (int q = 0; q < len; ++q) raw.push_back({gens[pick(rng)], sign(rng) ? 1 : -1});
  return Word::reduce(raw);
}

}  // namespace

Presentation random_presentation(std::uint64_t seed, int gens, int relators, int max_len) {
  std::mt19937_64 rng(seed);
  Presentation P;
  for (int i = 1; i <= gens; ++i) P.alphabet.add(gen_x(i));
  std::uniform_int_distribution<int> len(1, max_len);
  for (int q = 0; q < relators; ++q)
    P.add_relator(random_word(rng, P.alphabet.gens(), len(rng)), "random");
  return P;
}

TietzeWalk random_tietze_walk(const Presentation& P, std::uint64_t seed, int moves) {
  std::mt19937_64 rng(seed);
  TietzeWalk walk{P, {}};
  Presentation& Q = walk.result;
  // certificates of relators added on the walk, parallel to Q.relators
  std::vector<std::optional<Certificate>> certs(Q.relators.size());
  int fresh = 100;
  std::uniform_int_distribution<int> kind(0, 3), small(0, 3);
  auto any = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

  for (int done = 0, tries = 0; done < moves && tries < 20 * moves + 20; ++tries) {
    int k = kind(rng);
    if (k == 0 && !Q.relators.empty()) {
      Certificate c;
      for (int f = 0, nf = 1 + small(rng) % 3; f < nf; ++f)
        c.push_back({any(Q.relators.size()), random_word(rng, Q.alphabet.gens(), small(rng)),
                     std::bernoulli_distribution(0.5)(rng) ? 1 : -1});
      Word w = certificate_product(Q, c);
      if (w.empty()) continue;
      Q = tietze_add_relator(Q, w, c, "tietze");
      certs.push_back(c);
      walk.moves.push_back("add relator " + w.str());
    } else if (k == 1) {
      std::vector<std::size_t> removable;
      for (std::size_t q = 0; q < certs.size(); ++q)
        if (certs[q]) removable.push_back(q);
      if (removable.empty()) continue;
      std::size_t q = removable[any(removable.size())];
      Q = tietze_remove_relator(Q, q, certs[q]);
      certs.erase(certs.begin() + static_cast<long>(q));
      // later certificates may refer to q or shift past it
      for (auto& c : certs) {
        if (!c) continue;
        for (auto& f : *c) {
          if (f.relator == q) {
            c.reset();
            break;
          }
          if (f.relator > q) --f.relator;
        }
      }
      walk.moves.push_back("remove relator " + std::to_string(q));
    } else if (k == 2) {
      Gen g = gen_x(fresh++);
      Word def = random_word(rng, Q.alphabet.gens(), 1 + small(rng));
      Q = tietze_add_generator(Q, g, def);
      certs.emplace_back();
      walk.moves.push_back("add generator " + g.name() + " = " + def.str());
    } else if (k == 3) {
      std::vector<std::pair<Gen, std::size_t>> cand;
      for (std::size_t q = 0; q < Q.relators.size(); ++q) {
        std::map<Gen, long> occ;
        for (auto& l : Q.relators[q].word.letters()) occ[l.g] += std::abs(l.e);
        for (auto& [g, c] : occ)
          if (c == 1) cand.push_back({g, q});
      }
      if (cand.empty()) continue;
      auto [g, q] = cand[any(cand.size())];
      Q = tietze_remove_generator(Q, g, q);
      certs.assign(Q.relators.size(), std::nullopt);
      walk.moves.push_back("remove generator " + g.name());
    } else {
      continue;
    }
    ++done;
  }
  return walk;
}

}  // namespace mcgpres
