#include "mcgpres/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mcgpres {

namespace {

struct TagEntry {
  Family f;
  const char* tag;
};

constexpr TagEntry kTags[] = {
    {Family::a, "a"},          {Family::b, "b"},
    {Family::y, "y"},          {Family::d, "d"},
    {Family::a_sub, "a_sub"},  {Family::r_sub, "r_sub"},
    {Family::s, "s"},          {Family::s_bar, "s_bar"},
    {Family::s_bar_tri, "s_bar_tri"},
    {Family::x, "x"},          {Family::y_loop, "y_loop"},
    {Family::twist, "twist"},  {Family::cross_y, "cross_y"},
    {Family::z, "z"},          {Family::w, "w"},
    {Family::ybar, "ybar"},    {Family::schreier, "schreier"},
    {Family::image, "image"},
};

// text prefixes for indexed families, longest first so parsing is greedy
struct Prefix {
  const char* p;
  Family f;
  int arity;
};

constexpr Prefix kPrefixes[] = {
    {"ybar", Family::ybar, 1}, {"sbt", Family::s_bar_tri, 3},
    {"sb", Family::s_bar, 2},  {"yl", Family::y_loop, 1},
    {"a", Family::a, 1},       {"d", Family::d, 1},
    {"r", Family::r_sub, 2},   {"s", Family::s, 2},
    {"x", Family::x, 1},       {"z", Family::z, 1},
    {"w", Family::w, 1},
};

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> v;
  for (auto& part : split_top(s, '_')) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit))
      throw std::invalid_argument("bad index list: " + s);
    v.push_back(std::stoi(part));
  }
  return v;
}

}  // namespace

const char* family_tag(Family f) {
  for (auto& e : kTags)
    if (e.f == f) return e.tag;
  return "?";
}

Family family_from_tag(const std::string& tag) {
  for (auto& e : kTags)
    if (tag == e.tag) return e.f;
  throw std::invalid_argument("unknown family tag: " + tag);
}

int Gen::arity() const {
  switch (fam) {
    case Family::b:
    case Family::y:
    case Family::twist:
    case Family::cross_y:
    case Family::schreier:
    case Family::image:
      return 0;
    case Family::a_sub:
    case Family::r_sub:
    case Family::s:
    case Family::s_bar:
      return 2;
    case Family::s_bar_tri:
      return 3;
    default:
      return 1;
  }
}

std::vector<int> Gen::indices() const {
  std::vector<int> v{i, j, k};
  v.resize(arity());
  return v;
}

std::string Gen::name() const {
  auto ix = [&] {
    std::string s;
    for (int v : indices()) {
      if (!s.empty()) s += '_';
      s += std::to_string(v);
    }
    return s;
  };
  switch (fam) {
    case Family::a: return "a" + ix();
    case Family::b: return "b";
    case Family::y: return "y";
    case Family::d: return "d" + ix();
    case Family::a_sub: return "a" + ix();
    case Family::r_sub: return "r" + ix();
    case Family::s: return "s" + ix();
    case Family::s_bar: return "sb" + ix();
    case Family::s_bar_tri: return "sbt" + ix();
    case Family::x: return "x" + ix();
    case Family::y_loop: return "yl" + ix();
    case Family::z: return "z" + ix();
    case Family::w: return "w" + ix();
    case Family::ybar: return "ybar" + ix();
    case Family::twist: return "t[" + label + "," + orient + "]";
    case Family::cross_y:
      return "Y[" + label + "," + label2 + "," + orient + "]";
    case Family::schreier: return "[" + label + "]";
    case Family::image: return label + "(" + label2 + ")";
  }
  return "?";
}

Gen gen_from_indices(Family f, const std::vector<int>& idx) {
  Gen g;
  g.fam = f;
  if (static_cast<int>(idx.size()) != g.arity())
    throw std::invalid_argument(std::string("wrong index count for ") +
                                family_tag(f));
  if (idx.size() > 0) g.i = idx[0];
  if (idx.size() > 1) g.j = idx[1];
  if (idx.size() > 2) g.k = idx[2];
  return g;
}

Gen gen_a(int i) { return gen_from_indices(Family::a, {i}); }
Gen gen_b() { return gen_from_indices(Family::b, {}); }
Gen gen_y() { return gen_from_indices(Family::y, {}); }
Gen gen_d(int i) { return gen_from_indices(Family::d, {i}); }
Gen gen_asub(int i, int j) { return gen_from_indices(Family::a_sub, {i, j}); }
Gen gen_rsub(int i, int j) { return gen_from_indices(Family::r_sub, {i, j}); }
Gen gen_s(int i, int j) { return gen_from_indices(Family::s, {i, j}); }
Gen gen_sbar(int i, int j) { return gen_from_indices(Family::s_bar, {i, j}); }
Gen gen_sbartri(int j, int k, int i) {
  return gen_from_indices(Family::s_bar_tri, {j, k, i});
}
Gen gen_x(int i) { return gen_from_indices(Family::x, {i}); }
Gen gen_yloop(int i) { return gen_from_indices(Family::y_loop, {i}); }
Gen gen_z(int i) { return gen_from_indices(Family::z, {i}); }
Gen gen_w(int i) { return gen_from_indices(Family::w, {i}); }
Gen gen_ybar(int i) { return gen_from_indices(Family::ybar, {i}); }

Gen gen_twist(const std::string& curve, char orient) {
  Gen g;
  g.fam = Family::twist;
  g.label = curve;
  g.orient = orient;
  return g;
}

Gen gen_cross_y(const std::string& mu, const std::string& alpha, char orient) {
  Gen g;
  g.fam = Family::cross_y;
  g.label = mu;
  g.label2 = alpha;
  g.orient = orient;
  return g;
}

Gen gen_schreier(const std::string& def) {
  Gen g;
  g.fam = Family::schreier;
  g.label = def;
  return g;
}

Gen gen_image(const std::string& acting, const std::string& loop) {
  Gen g;
  g.fam = Family::image;
  g.label = acting;
  g.label2 = loop;
  return g;
}

Gen parse_gen(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty symbol");
  if (s == "b") return gen_b();
  if (s == "y") return gen_y();
  if (s.front() == '[' && s.back() == ']')
    return gen_schreier(s.substr(1, s.size() - 2));
  if ((s.rfind("t[", 0) == 0 || s.rfind("Y[", 0) == 0) && s.back() == ']') {
    auto parts = split_top(s.substr(2, s.size() - 3), ',');
    bool tw = s[0] == 't';
    if (parts.size() != (tw ? 2u : 3u) || parts.back().size() != 1)
      throw std::invalid_argument("bad curve symbol: " + s);
    char o = parts.back()[0];
    if (o != '+' && o != '-') throw std::invalid_argument("bad orientation: " + s);
    return tw ? gen_twist(parts[0], o) : gen_cross_y(parts[0], parts[1], o);
  }
  for (auto& p : kPrefixes) {
    std::string pre = p.p;
    if (s.rfind(pre, 0) != 0) continue;
    std::string rest = s.substr(pre.size());
    if (rest.empty() || !::isdigit(static_cast<unsigned char>(rest[0]))) continue;
    auto idx = parse_ints(rest);
    Family f = p.f;
    if (f == Family::a && idx.size() == 2) f = Family::a_sub;
    return gen_from_indices(f, idx);
  }
  throw std::invalid_argument("unknown symbol: " + s);
}

Word::Word(const Gen& g, long e) {
  if (e != 0) lt_.push_back({g, e});
}

Word Word::reduce(const std::vector<Letter>& raw) {
  Word w;
  auto& st = w.lt_;
  for (const auto& l : raw) {
    if (l.e == 0) continue;
    if (!st.empty() && st.back().g == l.g) {
      st.back().e += l.e;
      if (st.back().e == 0) st.pop_back();
    } else {
      st.push_back(l);
    }
  }
  return w;
}

long Word::length() const {
  long n = 0;
  for (auto& l : lt_) n += l.e < 0 ? -l.e : l.e;
  return n;
}

Word Word::inverse() const {
  Word w;
  w.lt_.reserve(lt_.size());
  for (auto it = lt_.rbegin(); it != lt_.rend(); ++it)
    w.lt_.push_back({it->g, -it->e});
  return w;
}

Word Word::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Word r;
  for (long t = 0; t < e; ++t) r *= *this;
  return r;
}

Word Word::operator*(const Word& o) const {
  Word r = *this;
  r *= o;
  return r;
}

Word& Word::operator*=(const Word& o) {
  for (const auto& l : o.lt_) {
    if (!lt_.empty() && lt_.back().g == l.g) {
      lt_.back().e += l.e;
      if (lt_.back().e == 0) lt_.pop_back();
    } else {
      lt_.push_back(l);
    }
  }
  return *this;
}

bool Word::operator<(const Word& o) const {
  return std::lexicographical_compare(
      lt_.begin(), lt_.end(), o.lt_.begin(), o.lt_.end(),
      [](const Letter& p, const Letter& q) {
        if (p.g != q.g) return p.g < q.g;
        return p.e < q.e;
      });
}

bool Word::contains(const Gen& g) const {
  for (auto& l : lt_)
    if (l.g == g) return true;
  return false;
}

long Word::exponent(const Gen& g) const {
  long s = 0;
  for (auto& l : lt_)
    if (l.g == g) s += l.e;
  return s;
}

Word Word::cyclic_reduce() const {
  std::vector<Letter> v = lt_;
  while (v.size() >= 2 && v.front().g == v.back().g) {
    long e = v.front().e + v.back().e;
    v.pop_back();
    if (e == 0) {
      v.erase(v.begin());
    } else {
      v.front().e = e;
      if (v.size() == 1) break;
    }
  }
  Word w;
  w.lt_ = std::move(v);
  return w;
}

Word Word::canonical_cyclic() const {
  Word c = cyclic_reduce();
  if (c.lt_.size() <= 1) {
    Word ci = c.inverse();
    return ci < c ? ci : c;
  }
  Word best = c;
  Word inv = c.inverse();
  for (const Word& src : {c, inv}) {
    const auto& v = src.lt_;
    std::size_t n = v.size();
    for (std::size_t r = 0; r < n; ++r) {
      Word rot;
      rot.lt_.reserve(n);
      for (std::size_t t = 0; t < n; ++t) rot.lt_.push_back(v[(r + t) % n]);
      if (rot < best) best = std::move(rot);
    }
  }
  return best;
}

std::vector<std::pair<Gen, int>> Word::expand() const {
  std::vector<std::pair<Gen, int>> out;
  for (auto& l : lt_) {
    int s = l.e > 0 ? 1 : -1;
    for (long t = 0; t < (l.e > 0 ? l.e : -l.e); ++t) out.emplace_back(l.g, s);
  }
  return out;
}

std::string Word::str() const {
  if (lt_.empty()) return "1";
  std::string s;
  for (auto& l : lt_) {
    if (!s.empty()) s += '*';
    s += l.g.name();
    if (l.e != 1) s += "^" + std::to_string(l.e);
  }
  return s;
}

Word reduce(const std::vector<Letter>& raw) { return Word::reduce(raw); }
Word invert(const Word& w) { return w.inverse(); }
Word conjugate(const Word& w, const Word& g) { return g * w * g.inverse(); }
Word commutator(const Word& u, const Word& v) {
  return u * v * u.inverse() * v.inverse();
}

Word parse_word(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty() || s == "1") return {};
  std::vector<Letter> raw;
  for (auto& tok : split_top(s, '*')) {
    std::size_t caret = std::string::npos;
    int depth = 0;
    for (std::size_t p = 0; p < tok.size(); ++p) {
      if (tok[p] == '[') ++depth;
      if (tok[p] == ']') --depth;
      if (tok[p] == '^' && depth == 0) caret = p;
    }
    long e = 1;
    std::string sym = tok;
    if (caret != std::string::npos) {
      sym = tok.substr(0, caret);
      e = std::stol(tok.substr(caret + 1));
    }
    raw.push_back({parse_gen(sym), e});
  }
  return Word::reduce(raw);
}

Alphabet::Alphabet(std::vector<Gen> gens) {
  for (auto& g : gens) add(g);
}

void Alphabet::add(const Gen& g) {
  if (idx_.count(g)) return;
  idx_[g] = gens_.size();
  gens_.push_back(g);
}

std::size_t Alphabet::index(const Gen& g) const {
  auto it = idx_.find(g);
  if (it == idx_.end()) throw UnknownSymbol("symbol not in alphabet: " + g.name());
  return it->second;
}

std::vector<long> exponent_vector(const Word& w, const Alphabet& A) {
  std::vector<long> v(A.size(), 0);
  for (auto& l : w.letters()) v[A.index(l.g)] += l.e;
  return v;
}

Word substitute(const Word& w, const std::map<Gen, Word>& m) {
  Word out;
  for (auto& l : w.letters()) {
    auto it = m.find(l.g);
    if (it == m.end())
      out *= Word(l.g, l.e);
    else
      out *= it->second.pow(l.e);
  }
  return out;
}

}  // namespace mcgpres
