#include "mcgpres/subgroup.hpp"

#include <deque>
#include <numeric>
#include <sstream>
#include <set>

namespace mcgpres {

namespace {

struct UnionFind {
  std::vector<int> p;
  int add() {
    p.push_back(static_cast<int>(p.size()));
    return p.back();
  }
  int find(int v) {
    while (p[v] != v) v = p[v] = p[p[v]];
    return v;
  }
  // keeps the smaller root so the base stays 0
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    p[b] = a;
    return true;
  }
};

}  // namespace

SubgroupGraph SubgroupGraph::fold(const std::vector<Word>& gens, const Alphabet& ambient) {
  UnionFind uf;
  uf.add();
  std::vector<Edge> raw;
  for (auto& g : gens) {
    auto ex = g.expand();
    if (ex.empty()) continue;
    int cur = 0;
    for (std::size_t q = 0; q < ex.size(); ++q) {
      if (!ambient.has(ex[q].first)) throw UnknownSymbol("not in ambient alphabet: " + ex[q].first.name());
      int nxt = q + 1 == ex.size() ? 0 : uf.add();
      if (ex[q].second > 0)
        raw.push_back({cur, ex[q].first, nxt});
      else
        raw.push_back({nxt, ex[q].first, cur});
      cur = nxt;
    }
  }
  // fold until no vertex has two equally labelled edges in one direction
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::pair<int, Gen>, int> outm, inm;
    for (auto& e : raw) {
      int a = uf.find(e.from), b = uf.find(e.to);
      auto [it, fresh] = outm.emplace(std::make_pair(a, e.label), b);
      if (!fresh && uf.unite(it->second, b)) changed = true;
      auto [jt, fresh2] = inm.emplace(std::make_pair(b, e.label), a);
      if (!fresh2 && uf.unite(jt->second, a)) changed = true;
    }
  }
  std::set<Edge> es;
  for (auto& e : raw) es.insert({uf.find(e.from), e.label, uf.find(e.to)});

  // prune hanging trees so only the core through the base remains
  for (bool changed = true; changed;) {
    changed = false;
    std::map<int, int> deg;
    for (auto& e : es) {
      ++deg[e.from];
      ++deg[e.to];
    }
    for (auto it = es.begin(); it != es.end();) {
      bool leaf = (it->from != 0 && deg[it->from] == 1) || (it->to != 0 && deg[it->to] == 1);
      if (leaf) {
        it = es.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }

  // renumber in breadth-first order from the base
  std::map<int, std::vector<std::pair<Gen, int>>> adj;
  for (auto& e : es) {
    adj[e.from].push_back({e.label, e.to});
    adj[e.to].push_back({e.label, e.from});
  }
  std::map<int, int> id{{0, 0}};
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (auto& [l, w] : adj[v])
      if (!id.count(w)) {
        int nid = static_cast<int>(id.size());
        id[w] = nid;
        queue.push_back(w);
      }
  }
  SubgroupGraph G;
  G.ambient_ = ambient;
  G.out_.resize(id.size());
  G.in_.resize(id.size());
  for (auto& e : es) {
    int a = id.at(e.from), b = id.at(e.to);
    G.out_[a][e.label] = b;
    G.in_[b][e.label] = a;
  }
  return G;
}

std::size_t SubgroupGraph::edge_count() const {
  std::size_t c = 0;
  for (auto& m : out_) c += m.size();
  return c;
}

std::vector<SubgroupGraph::Edge> SubgroupGraph::edges() const {
  std::vector<Edge> v;
  for (int a = 0; a < static_cast<int>(out_.size()); ++a)
    for (auto& [l, b] : out_[a]) v.push_back({a, l, b});
  return v;
}

long SubgroupGraph::rank() const {
  return static_cast<long>(edge_count()) - static_cast<long>(vertex_count()) + 1;
}

bool SubgroupGraph::is_folded() const {
  // maps make outgoing labels unique; incoming must agree with them
  std::size_t in = 0;
  for (auto& m : in_) in += m.size();
  return in == edge_count();
}

bool SubgroupGraph::contains(const Word& w) const {
  int v = 0;
  for (auto& [g, s] : w.expand()) {
    if (!ambient_.has(g)) throw UnknownSymbol("not in ambient alphabet: " + g.name());
    const auto& m = s > 0 ? out_[v] : in_[v];
    auto it = m.find(g);
    if (it == m.end()) return false;
    v = it->second;
  }
  return v == 0;
}

bool SubgroupGraph::isomorphic(const SubgroupGraph& o) const {
  if (vertex_count() != o.vertex_count() || edge_count() != o.edge_count()) return false;
  std::vector<int> f(vertex_count(), -1), finv(vertex_count(), -1);
  f[0] = finv[0] = 0;
  std::deque<int> queue{0};
  auto match = [&](int a, int b) {
    if (f[a] == -1 && finv[b] == -1) {
      f[a] = b;
      finv[b] = a;
      queue.push_back(a);
      return true;
    }
    return f[a] == b;
  };
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    int u = f[v];
    if (out_[v].size() != o.out_[u].size() || in_[v].size() != o.in_[u].size()) return false;
    for (auto& [l, w] : out_[v]) {
      auto it = o.out_[u].find(l);
      if (it == o.out_[u].end() || !match(w, it->second)) return false;
    }
    for (auto& [l, w] : in_[v]) {
      auto it = o.in_[u].find(l);
      if (it == o.in_[u].end() || !match(w, it->second)) return false;
    }
  }
  return true;
}

int Character::operator()(const Word& w) const {
  long s = 0;
  for (auto& l : w.letters()) {
    if (!ambient.has(l.g)) throw UnknownSymbol("not in ambient alphabet: " + l.g.name());
    auto it = value.find(l.g);
    if (it != value.end()) s += it->second * l.e;
  }
  return static_cast<int>(((s % 2) + 2) % 2);
}

bool Character::trivial() const {
  for (auto& [g, v] : value)
    if (v % 2) return false;
  return true;
}

Alphabet loop_alphabet(int g, int n) {
  Alphabet A;
  for (int i = 1; i <= g; ++i) A.add(gen_x(i));
  for (int l = 1; l <= n - 2; ++l) A.add(gen_yloop(l));
  return A;
}

Character orientation_character(int g, int n) {
  Character ch{loop_alphabet(g, n), {}};
  for (auto& s : ch.ambient.gens()) ch.value[s] = s.fam == Family::x ? 1 : 0;
  return ch;
}

namespace {

// least generator of odd value; shortlex picks it over every inverse and longer word
Word odd_rep(const Character& ch) {
  for (auto& s : ch.ambient.gens())
    if (ch.value.count(s) && ch.value.at(s) % 2) return Word(s);
  return {};
}

}  // namespace

std::vector<Word> schreier_transversal(const Character& ch) {
  if (ch.trivial()) return {Word()};
  return {Word(), odd_rep(ch)};
}

Gen schreier_symbol(const Word& def) { return gen_schreier(def.str()); }

Word schreier_definition(const Gen& s) {
  if (s.fam != Family::schreier) throw std::invalid_argument("not a Schreier symbol: " + s.name());
  return parse_word(s.label);
}

std::vector<Word> reidemeister_schreier_generators(const Character& ch) {
  auto U = schreier_transversal(ch);
  Word t = U.size() > 1 ? U[1] : Word();
  auto rep = [&](const Word& w) { return ch(w) ? t : Word(); };
  std::vector<Word> B;
  for (auto& u : U)
    for (auto& x : ch.ambient.gens()) {
      Word xu = Word(x) * u;
      Word gamma = rep(xu).inverse() * xu;
      if (!gamma.empty()) B.push_back(gamma);
    }
  return B;
}

Word rewrite_in_subgroup(const Word& w, const Character& ch) {
  if (ch(w)) throw IndexError("word is not in the subgroup: " + w.str());
  auto U = schreier_transversal(ch);
  Word t = U.size() > 1 ? U[1] : Word();
  auto rep = [&](const Word& v) { return ch(v) ? t : Word(); };
  // right to left: w = gamma(l_1, u_{m-1}) ... gamma(l_m, u_0)
  auto ex = w.expand();
  std::vector<Letter> out;
  Word u;
  for (auto it = ex.rbegin(); it != ex.rend(); ++it) {
    Word x(it->first);
    if (it->second > 0) {
      Word xu = x * u;
      Word nu = rep(xu);
      Word gamma = nu.inverse() * xu;
      if (!gamma.empty()) out.push_back({schreier_symbol(gamma), 1});
      u = nu;
    } else {
      Word nu = rep(x.inverse() * u);
      Word gamma = u.inverse() * x * nu;
      if (!gamma.empty()) out.push_back({schreier_symbol(gamma), -1});
      u = nu;
    }
  }
  std::reverse(out.begin(), out.end());
  return Word::reduce(out);
}

Alphabet push_basis_alphabet(int g, int n) {
  Alphabet A;
  for (int i = 1; i <= g; ++i) A.add(gen_z(i));
  for (int i = 1; i <= g - 1; ++i) A.add(gen_w(i));
  for (int l = 1; l <= n - 2; ++l) A.add(gen_yloop(l));
  for (int l = 1; l <= n - 2; ++l) A.add(gen_ybar(l));
  return A;
}

std::map<Gen, Word> push_basis_definitions(int g, int n) {
  std::map<Gen, Word> m;
  Word x1(gen_x(1));
  for (int i = 1; i <= g; ++i) m[gen_z(i)] = Word(gen_x(i), 2);
  for (int i = 1; i <= g - 1; ++i) m[gen_w(i)] = Word(gen_x(i + 1)) * Word(gen_x(i));
  for (int l = 1; l <= n - 2; ++l) {
    m[gen_yloop(l)] = Word(gen_yloop(l));
    m[gen_ybar(l)] = conjugate(Word(gen_yloop(l)), x1.inverse());
  }
  return m;
}

std::vector<Word> push_basis(int g, int n) {
  std::vector<Word> v;
  auto m = push_basis_definitions(g, n);
  Alphabet A = push_basis_alphabet(g, n);
  for (auto& s : A.gens()) v.push_back(m.at(s));
  return v;
}

std::map<Gen, Word> schreier_to_push_basis(int g, int n) {
  std::map<Gen, Word> m;
  Word x1(gen_x(1));
  // x_i x_1 = w_{i-1} z_{i-1}^-1 (x_{i-1} x_1)
  std::vector<Word> xi_x1(g + 1);
  xi_x1[1] = Word(gen_z(1));
  for (int i = 2; i <= g; ++i)
    xi_x1[i] = Word(gen_w(i - 1)) * Word(gen_z(i - 1), -1) * xi_x1[i - 1];
  for (int i = 1; i <= g; ++i) m[schreier_symbol(Word(gen_x(i)) * x1)] = xi_x1[i];
  // x_1^-1 x_j = (x_j x_1)^-1 z_j
  for (int j = 2; j <= g; ++j)
    m[schreier_symbol(x1.inverse() * Word(gen_x(j)))] = xi_x1[j].inverse() * Word(gen_z(j));
  for (int l = 1; l <= n - 2; ++l) {
    Word y(gen_yloop(l));
    m[schreier_symbol(y)] = Word(gen_yloop(l));
    m[schreier_symbol(x1.inverse() * y * x1)] = Word(gen_ybar(l));
  }
  return m;
}

Word rewrite_in_push_basis(const Word& w, int g, int n) {
  return substitute(rewrite_in_subgroup(w, orientation_character(g, n)),
                    schreier_to_push_basis(g, n));
}

std::string BasisCheck::str() const {
  std::ostringstream os;
  os << "B (" << B.size() << " generators):\n";
  for (auto& b : B) os << "  " << b.str() << "\n";
  os << "rank of fold(B): " << rank_B << ", rank of fold(push basis): " << rank_push
     << ", expected " << expected << "\n";
  os << "folded graphs " << (isomorphic ? "isomorphic" : "NOT isomorphic") << "\n";
  os << (ok() ? "ok" : "FAILED") << "\n";
  return os.str();
}

BasisCheck check_subgroup_basis(int g, int n) {
  if (g < 1 || n < 2) throw std::invalid_argument("the loop subgroup needs g >= 1 and n >= 2");
  auto ch = orientation_character(g, n);
  BasisCheck c;
  c.g = g;
  c.n = n;
  c.B = reidemeister_schreier_generators(ch);
  auto GB = SubgroupGraph::fold(c.B, ch.ambient);
  auto GP = SubgroupGraph::fold(push_basis(g, n), ch.ambient);
  c.rank_B = GB.rank();
  c.rank_push = GP.rank();
  c.expected = 2L * g + 2L * n - 5;
  c.isomorphic = GB.isomorphic(GP);
  return c;
}

}  // namespace mcgpres
