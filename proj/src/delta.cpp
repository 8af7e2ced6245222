#include "mcgpres/delta.hpp"

#include <algorithm>
#include <cctype>
#include <future>
#include <mutex>
#include <sstream>

#include "json.hpp"

#include "mcgpres/catalog.hpp"
#include "mcgpres/homology.hpp"
#include "mcgpres/subgroup.hpp"

namespace mcgpres {

extern const char* const kLoopLedgerJson;
extern const char* const kDerivationsJson;

using nlohmann::json;

DeltaFactor DeltaFactor::delta(const Word& loop) { return {Kind::delta, loop, 0}; }
DeltaFactor DeltaFactor::gen(const Word& w) { return {Kind::gen, w, 0}; }
DeltaFactor DeltaFactor::central(long k) { return {Kind::central, {}, k}; }

DeltaFactor DeltaFactor::inverse() const {
  if (kind == Kind::central) return central(-k);
  return {kind, w.inverse(), 0};
}

std::string DeltaFactor::str() const {
  switch (kind) {
    case Kind::delta: return "D(" + (w.empty() ? std::string("1") : w.str()) + ")";
    case Kind::gen: return "{" + (w.empty() ? std::string("1") : w.str()) + "}";
    case Kind::central: return "d^" + std::to_string(k);
  }
  return "?";
}

std::string expr_str(const DeltaExpr& e) {
  std::string s;
  for (auto& f : e) {
    if (!s.empty()) s += " ";
    s += f.str();
  }
  return s.empty() ? "1" : s;
}

DeltaExpr normalize(const DeltaExpr& e) {
  DeltaExpr out;
  long k = 0;
  for (auto& f : e) {
    if (f.kind == DeltaFactor::Kind::central)
      k += f.k;
    else if (!f.w.empty())
      out.push_back(f);
  }
  if (k) out.push_back(DeltaFactor::central(k));
  return out;
}

long central_power(const DeltaExpr& e) {
  long k = 0;
  for (auto& f : e)
    if (f.kind == DeltaFactor::Kind::central) k += f.k;
  return k;
}

namespace {

constexpr std::pair<Rule, const char*> kRules[] = {
    {Rule::L_PLUS, "L_PLUS"},       {Rule::L_MINUS, "L_MINUS"},     {Rule::L_ZERO, "L_ZERO"},
    {Rule::CONJ_PUSH, "CONJ_PUSH"}, {Rule::SUBST_GEN, "SUBST_GEN"}, {Rule::LEDGER_ACTION, "LEDGER_ACTION"},
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

DeltaExpr strip_central(const DeltaExpr& e) {
  DeltaExpr out;
  for (auto& f : normalize(e))
    if (f.kind != DeltaFactor::Kind::central) out.push_back(f);
  return out;
}

}  // namespace

const char* rule_tag(Rule r) {
  for (auto& [k, v] : kRules)
    if (k == r) return v;
  return "?";
}

Rule rule_from_tag(const std::string& s) {
  for (auto& [k, v] : kRules)
    if (s == v) return k;
  throw std::invalid_argument("unknown rule: " + s);
}

LoopLedger::LoopLedger(const std::string& json_text) {
  auto j = json::parse(json_text);
  for (auto& f : j.at("facts"))
    facts_.push_back({f.at("key").get<std::string>(), f.at("lhs").get<std::string>(),
                      f.at("rhs").get<std::string>(), f.value("note", std::string())});
}

const LoopLedger& LoopLedger::builtin() {
  static const LoopLedger L(kLoopLedgerJson);
  return L;
}

const LoopFact* LoopLedger::find(const std::string& key) const {
  for (auto& f : facts_)
    if (f.key == key) return &f;
  return nullptr;
}

DeltaContext::DeltaContext(int g, int n, Env env) : g_(g), n_(n), env_(env) {
  check_params(g, n);
  if (n < 2) throw InvalidSurface("the delta calculus needs n >= 2");
  env_['g'] = g;
  env_['n'] = n;
  env_['k'] = n - 1;
  full_ = level_macros(g, n - 1, MacroMode::full);
  auto x = [](int i) { return Word(gen_x(i)); };
  auto yb = [x](int l) { return x(1).inverse() * Word(gen_yloop(l)) * x(1); };
  // C_j = (x_2 x_1)^-1 x_2^2 ... (x_j x_{j-1})^-1 x_j^2
  auto chain = [x](int j) {
    Word c;
    for (int q = 2; q <= j; ++q) c *= (x(q) * x(q - 1)).inverse() * x(q).pow(2);
    return c;
  };
  int gg = g, top = n - 2;
  loops_ = [=](const std::string& name, const std::vector<int>& a) -> Word {
    auto need = [&](std::size_t c) {
      if (a.size() != c) throw std::invalid_argument("wrong macro arity for " + name);
    };
    if (name == "Yb") {
      need(1);
      if (a[0] < 1 || a[0] > top) throw std::out_of_range("Yb index out of range");
      return yb(a[0]);
    }
    if (name == "Ybt") {
      need(2);
      if (a[0] < 1 || a[0] > top || a[1] < 1 || a[1] > gg)
        throw std::out_of_range("Ybt index out of range");
      Word c = chain(a[1]);
      return c.inverse() * yb(a[0]) * c;
    }
    throw std::invalid_argument("unknown loop macro " + name);
  };
  auto add = [&](const Word& loop, const Word& w) {
    named_[loop] = w;
    named_[loop.inverse()] = w.inverse();
  };
  for (int i = 1; i <= g; ++i) add(x(i).pow(2), full_("R", {i}));
  for (int i = 1; i + 1 <= g; ++i) add(x(i + 1) * x(i), full_("P", {i}));
  for (int l = 1; l <= n - 2; ++l) {
    add(Word(gen_yloop(l)), full_("S", {l}));
    add(yb(l), full_("Sb", {l}));
    for (int j = 2; j <= g; ++j) add(loops_("Ybt", {l, j}), full_("Sbt", {l, j}));
  }
}

std::optional<Word> DeltaContext::named(const Word& loop) const {
  auto it = named_.find(loop);
  if (it == named_.end()) return std::nullopt;
  return it->second;
}

Word DeltaContext::delta_assign(const Word& loop) const {
  auto w = named(loop);
  if (!w) throw UnnamedLoop("not a named loop: " + (loop.empty() ? std::string("1") : loop.str()));
  return *w;
}

Word DeltaContext::image(const DeltaFactor& acting, const Word& loop) const {
  if (acting.kind == DeltaFactor::Kind::central)
    throw std::invalid_argument("a central power acts trivially and makes no image");
  if (loop.empty()) return {};
  if (acting.w.empty()) return loop;
  auto& lt = loop.letters();
  if (acting.kind == DeltaFactor::Kind::gen && lt.size() == 1 && (lt[0].e == 1 || lt[0].e == -1) &&
      lt[0].g.fam == Family::image) {
    auto& d = image_def(lt[0].g);
    if (d.acting.kind == DeltaFactor::Kind::gen)
      return image(DeltaFactor::gen(acting.w * d.acting.w), d.loop).pow(lt[0].e);
  }
  Word inv = loop.inverse();
  if (inv < loop) return image(acting, inv).inverse();
  std::string label = acting.kind == DeltaFactor::Kind::gen ? acting.w.str() : "D:" + acting.w.str();
  Gen s = gen_image(label, loop.str());
  images_.emplace(s, ImageDef{acting, loop});
  return Word(s);
}

const DeltaContext::ImageDef& DeltaContext::image_def(const Gen& s) const {
  auto it = images_.find(s);
  if (it == images_.end()) throw std::invalid_argument("unregistered image letter " + s.name());
  return it->second;
}

DeltaFactor DeltaContext::parse_factor(const std::string& text) const {
  std::string t = trim(text);
  auto colon = t.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("factor needs a kind prefix: " + t);
  std::string kind = trim(t.substr(0, colon)), body = trim(t.substr(colon + 1));
  if (kind == "G") return DeltaFactor::gen(Formula(body).eval(env_, full_));
  if (kind == "W") return DeltaFactor::gen(parse_word(body));
  if (kind == "D") return DeltaFactor::delta(parse_loop(body));
  if (kind == "d") return DeltaFactor::central(std::stol(body));
  throw std::invalid_argument("unknown factor kind: " + kind);
}

Word DeltaContext::parse_loop(const std::string& text) const {
  Word out;
  std::string plain;
  auto flush = [&] {
    if (!trim(plain).empty()) out *= Formula(plain).eval(env_, loops_);
    plain.clear();
  };
  for (std::size_t p = 0; p < text.size();) {
    if (text.compare(p, 2, "@[") != 0) {
      plain.push_back(text[p++]);
      continue;
    }
    flush();
    int depth = 0;
    std::size_t q = p + 1, bar = std::string::npos;
    for (; q < text.size(); ++q) {
      if (text[q] == '[') ++depth;
      if (text[q] == ']' && --depth == 0) break;
      if (text[q] == '|' && depth == 1) bar = q;
    }
    if (q == text.size() || bar == std::string::npos) throw std::invalid_argument("bad image in " + text);
    DeltaFactor acting = parse_factor(text.substr(p + 2, bar - p - 2));
    Word img = image(acting, parse_loop(text.substr(bar + 1, q - bar - 1)));
    p = q + 1;
    long e = 1;
    if (p < text.size() && text[p] == '^') {
      std::size_t r = p + 1;
      if (r < text.size() && text[r] == '-') ++r;
      while (r < text.size() && std::isdigit(static_cast<unsigned char>(text[r]))) ++r;
      e = std::stol(text.substr(p + 1, r - p - 1));
      p = r;
    }
    out *= img.pow(e);
  }
  flush();
  return out;
}

DeltaExpr DeltaContext::parse_expr(const std::vector<std::string>& factors) const {
  DeltaExpr e;
  for (auto& f : factors) e.push_back(parse_factor(f));
  return e;
}

Word DeltaContext::evaluate(const DeltaFactor& f) const {
  switch (f.kind) {
    case DeltaFactor::Kind::gen: return f.w;
    case DeltaFactor::Kind::central: return Word(gen_d(n_ - 1), f.k);
    case DeltaFactor::Kind::delta: break;
  }
  const Word& L = f.w;
  if (L.empty()) return {};
  if (auto w = named(L)) return *w;
  auto& lt = L.letters();
  if (lt.size() == 1 && (lt[0].e == 1 || lt[0].e == -1) && lt[0].g.fam == Family::image) {
    auto& d = image_def(lt[0].g);
    // Delta(f(gamma)) = f Delta(gamma) f^-1
    Word a = evaluate(d.acting);
    return conjugate(evaluate(DeltaFactor::delta(d.loop)), a).pow(lt[0].e);
  }
  Word inv = L.inverse();
  if (inv < L) return evaluate(DeltaFactor::delta(inv)).inverse();
  return Word(gen_image("Delta", L.str()));
}

Word DeltaContext::evaluate(const DeltaExpr& e) const {
  Word w;
  for (auto& f : e) w *= evaluate(f);
  return w;
}

std::uint64_t DeltaContext::loop_class(const Word& loop) const {
  HomologySpace H(g_, n_);
  std::uint64_t v = 0;
  for (auto& l : loop.letters()) {
    if (l.e % 2 == 0) continue;
    std::uint64_t c;
    switch (l.g.fam) {
      case Family::x: c = std::uint64_t{1} << (l.g.i - 1); break;
      case Family::y_loop: c = std::uint64_t{1} << (g_ + l.g.i - 1); break;
      case Family::image: {
        auto& d = image_def(l.g);
        c = act(d.acting, loop_class(d.loop));
        break;
      }
      default: throw std::invalid_argument("not a loop letter: " + l.g.name());
    }
    v ^= c;
  }
  // the puncture class dies once the point is filled in
  return v & ~(std::uint64_t{1} << (g_ + n_ - 2));
}

std::uint64_t DeltaContext::act(const DeltaFactor& acting, std::uint64_t v) const {
  // Delta(gamma) twists along two curves that differ by the puncture class
  if (acting.kind != DeltaFactor::Kind::gen) return v;
  Representation rep{HomologySpace(g_, n_)};
  return rep.image(acting.w).apply(v) & ~(std::uint64_t{1} << (g_ + n_ - 2));
}

namespace {

Word iota_of_loop(const DeltaContext& ctx, const Word& loop) {
  MacroFn full = level_macros(ctx.g(), ctx.n() - 1, MacroMode::full);
  std::map<Gen, Word> m;
  Alphabet basis = push_basis_alphabet(ctx.g(), ctx.n());
  for (auto& s : basis.gens()) {
    int i = s.indices()[0];
    switch (s.fam) {
      case Family::z: m[s] = full("R", {i}); break;
      case Family::w: m[s] = full("P", {i}); break;
      case Family::y_loop: m[s] = full("S", {i}); break;
      case Family::ybar: m[s] = full("Sb", {i}); break;
      default: break;
    }
  }
  return substitute(rewrite_in_push_basis(loop, ctx.g(), ctx.n()), m);
}

bool single_image(const Word& w) {
  auto& lt = w.letters();
  return lt.size() == 1 && (lt[0].e == 1 || lt[0].e == -1) && lt[0].g.fam == Family::image;
}

}  // namespace

DeltaExpr apply_step(const DeltaContext& ctx, const DeltaExpr& e0, const DerivationStep& s,
                     const LoopLedger& ledger) {
  DeltaExpr e = normalize(e0);
  std::size_t body = e.size() - (e.empty() || e.back().kind != DeltaFactor::Kind::central ? 0 : 1);
  auto need = [&](std::size_t count) {
    if (s.at < 0 || static_cast<std::size_t>(s.at) + count > body)
      throw std::out_of_range(std::string(rule_tag(s.rule)) + " operands out of range");
  };
  auto is_delta = [&](std::size_t q) { return e[q].kind == DeltaFactor::Kind::delta; };
  std::size_t p = static_cast<std::size_t>(s.at);
  switch (s.rule) {
    case Rule::L_PLUS:
    case Rule::L_MINUS:
    case Rule::L_ZERO: {
      need(2);
      if (!is_delta(p) || !is_delta(p + 1))
        throw std::invalid_argument("merge needs two adjacent Delta factors");
      int eps = s.rule == Rule::L_PLUS ? 1 : s.rule == Rule::L_MINUS ? -1 : 0;
      if (s.eps != 0 && s.eps != eps) throw std::invalid_argument("declared epsilon disagrees with rule");
      e[p] = DeltaFactor::delta(e[p].w * e[p + 1].w);
      e.erase(e.begin() + p + 1);
      e.push_back(DeltaFactor::central(eps));
      break;
    }
    case Rule::CONJ_PUSH: {
      need(3);
      if (e[p].kind == DeltaFactor::Kind::central || !is_delta(p + 1) || !(e[p + 2] == e[p].inverse()))
        throw std::invalid_argument("push needs f Delta(gamma) f^-1");
      e[p] = DeltaFactor::delta(ctx.image(e[p], e[p + 1].w));
      e.erase(e.begin() + p + 1, e.begin() + p + 3);
      break;
    }
    case Rule::SUBST_GEN: {
      need(static_cast<std::size_t>(s.len));
      DeltaExpr old(e.begin() + p, e.begin() + p + s.len), rep;
      for (auto& r : s.with) {
        if (r.ref < 0) {
          rep.push_back(r.f);
          continue;
        }
        if (static_cast<std::size_t>(r.ref) >= body) throw std::out_of_range("substitution reference out of range");
        rep.push_back(r.inv ? e[r.ref].inverse() : e[r.ref]);
      }
      if (!(ctx.evaluate(old) == ctx.evaluate(rep)))
        throw std::invalid_argument("substitution changes the element: " + expr_str(old) + " vs " +
                                    expr_str(rep));
      e.erase(e.begin() + p, e.begin() + p + s.len);
      e.insert(e.begin() + p, rep.begin(), rep.end());
      break;
    }
    case Rule::LEDGER_ACTION: {
      need(1);
      if (!is_delta(p)) throw std::invalid_argument("ledger action needs a Delta factor");
      const Word& L = e[p].w;
      if (s.fact == "push") {
        if (!single_image(L)) throw std::invalid_argument("push needs a single image letter");
        auto& d = ctx.image_def(L.letters()[0].g);
        if (d.acting.kind != DeltaFactor::Kind::gen || !(iota_of_loop(ctx, s.push.w) == d.acting.w))
          throw std::invalid_argument("acting word is not the push along " + s.push.w.str());
        e[p] = DeltaFactor::delta(conjugate(d.loop, s.push.w).pow(L.letters()[0].e));
        break;
      }
      const LoopFact* f = ledger.find(s.fact);
      if (!f) throw std::invalid_argument("ledger miss: " + s.fact);
      Word lhs = ctx.parse_loop(f->lhs), rhs = ctx.parse_loop(f->rhs);
      const Word& from = s.fold ? rhs : lhs;
      const Word& to = s.fold ? lhs : rhs;
      if (L == from)
        e[p] = DeltaFactor::delta(to);
      else if (L == from.inverse())
        e[p] = DeltaFactor::delta(to.inverse());
      else
        throw std::invalid_argument("loop " + L.str() + " does not match fact " + s.fact);
      break;
    }
  }
  return normalize(e);
}

FactCheck check_fact(const DeltaContext& ctx, const LoopFact& f) {
  FactCheck c{f.key, true, {}};
  try {
    auto l = ctx.loop_class(ctx.parse_loop(f.lhs));
    auto r = ctx.loop_class(ctx.parse_loop(f.rhs));
    c.ok = l == r;
    if (!c.ok) {
      HomologySpace H(ctx.g(), ctx.n());
      c.detail = "lhs class " + H.str(l) + ", rhs class " + H.str(r);
    }
  } catch (const std::exception& ex) {
    c.ok = false;
    c.detail = ex.what();
  }
  return c;
}

Verdict check_derivation(const DeltaContext& ctx, const std::vector<DerivationStep>& deriv,
                         const DeltaExpr& start, const DeltaExpr& claimed_end, long claimed_epsilon,
                         const LoopLedger& ledger) {
  Verdict v;
  DeltaExpr cur = normalize(start);
  for (std::size_t q = 0; q < deriv.size(); ++q) {
    auto& s = deriv[q];
    if (s.rule == Rule::LEDGER_ACTION) {
      if (s.fact == "push") {
        if (q < deriv.size() && s.at >= 0 && static_cast<std::size_t>(s.at) < cur.size() &&
            single_image(cur[s.at].w)) {
          auto& d = ctx.image_def(cur[s.at].w.letters()[0].g);
          Word before = Word(cur[s.at].w.letters()[0].g);
          Word after = conjugate(d.loop, s.push.w);
          FactCheck c{"push " + s.push.w.str(), ctx.loop_class(before) == ctx.loop_class(after), {}};
          if (!c.ok) c.detail = "a push changed the homology class";
          v.facts.push_back(c);
        }
      } else if (auto* f = ledger.find(s.fact)) {
        v.facts.push_back(check_fact(ctx, *f));
      }
    }
    try {
      cur = apply_step(ctx, cur, s, ledger);
    } catch (const std::exception& ex) {
      v.error = DerivationError(q, ex.what()).what();
      v.end = cur;
      return v;
    }
  }
  v.end = cur;
  v.net = central_power(cur);
  v.epsilon = -v.net;
  bool facts_ok = std::all_of(v.facts.begin(), v.facts.end(), [](auto& c) { return c.ok; });
  bool end_ok = strip_central(cur) == strip_central(claimed_end);
  v.ok = end_ok && v.epsilon == claimed_epsilon && facts_ok;
  if (!end_ok)
    v.error = "end " + expr_str(strip_central(cur)) + " differs from claimed " +
              expr_str(strip_central(claimed_end));
  else if (v.epsilon != claimed_epsilon)
    v.error = "epsilon " + std::to_string(v.epsilon) + " differs from claimed " +
              std::to_string(claimed_epsilon);
  else if (!facts_ok)
    v.error = "a ledger fact fails the homology cross-check";
  return v;
}

Derivation parse_derivation(const std::string& json_text) {
  return [](const json& j) {
    Derivation d;
    d.family = j.at("family").get<std::string>();
    d.branch = j.at("branch").get<std::string>();
    d.note = j.value("note", std::string());
    d.start = j.at("start").get<std::vector<std::string>>();
    d.end = j.at("end").get<std::vector<std::string>>();
    d.epsilon = j.at("epsilon").get<long>();
    if (j.contains("stated")) d.stated = j.at("stated").get<long>();
    for (auto& s : j.at("steps")) {
      StepRecord r;
      r.rule = s.at("rule").get<std::string>();
      rule_from_tag(r.rule);
      r.at = s.at("at").get<int>();
      r.len = s.value("len", 1);
      r.eps = s.value("eps", 0);
      r.with = s.value("with", std::vector<std::string>{});
      r.fact = s.value("fact", std::string());
      r.fold = s.value("fold", false);
      r.push = s.value("push", std::string());
      d.steps.push_back(r);
    }
    return d;
  }(json::parse(json_text));
}

const std::vector<Derivation>& builtin_derivations() {
  static const std::vector<Derivation> all = [] {
    std::vector<Derivation> v;
    for (auto& j : json::parse(kDerivationsJson)) v.push_back(parse_derivation(j.dump()));
    return v;
  }();
  return all;
}

namespace {

DerivationStep instantiate(const DeltaContext& ctx, const StepRecord& r) {
  DerivationStep s;
  s.rule = rule_from_tag(r.rule);
  s.at = r.at;
  s.len = r.len;
  s.eps = r.eps;
  s.fact = r.fact;
  s.fold = r.fold;
  if (!r.push.empty()) s.push = {ctx.parse_loop(r.push), r.push};
  for (auto& t : r.with) {
    Replacement rep;
    std::string u = trim(t);
    if (!u.empty() && u[0] == '#') {
      auto caret = u.find('^');
      rep.ref = std::stoi(u.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
      if (caret != std::string::npos) {
        if (u.substr(caret) != "^-1") throw std::invalid_argument("bad reference " + u);
        rep.inv = true;
      }
    } else {
      rep.f = ctx.parse_factor(u);
    }
    s.with.push_back(rep);
  }
  return s;
}

std::string sgn(long v) { return (v > 0 ? "+" : "") + std::to_string(v); }

}  // namespace

bool DerivationReport::ok() const {
  return std::all_of(instances.begin(), instances.end(), [](auto& r) { return r.ok(); });
}

std::string DerivationReport::str() const {
  std::ostringstream os;
  std::size_t good = std::count_if(instances.begin(), instances.end(), [](auto& r) { return r.ok(); });
  os << family << " " << branch << ": epsilon " << sgn(epsilon) << ", " << good << "/"
     << instances.size() << " instances " << (ok() ? "ok" : "FAILED") << "\n";
  for (auto& r : instances) {
    if (r.ok()) continue;
    os << "  g=" << r.g << " n=" << r.n << " " << r.kase << ":";
    if (!r.start_matches) os << " start does not evaluate to the relation's right side;";
    if (!r.end_matches) os << " end does not evaluate to f x f^-1;";
    if (!r.verdict.ok) os << " " << r.verdict.error;
    for (auto& c : r.verdict.facts)
      if (!c.ok) os << " [fact " << c.key << ": " << c.detail << "]";
    os << "\n";
  }
  for (auto& w : warnings) os << "  warning: " << w << "\n";
  return os.str();
}

DerivationReport replay(const Derivation& d, int g, int n) {
  DerivationReport rep{d.family, d.branch, d.epsilon, {}, {}};
  if (d.stated && *d.stated != d.epsilon)
    rep.warnings.push_back("worked text states epsilon " + sgn(*d.stated) + ", replay gives " +
                           sgn(d.epsilon));
  auto& sum = epsilon_summary();
  auto it = sum.find({d.family, d.branch});
  long summary = it == sum.end() ? 0 : it->second;
  if (summary != d.epsilon)
    rep.warnings.push_back("summary gives epsilon " + sgn(summary) + ", replay gives " + sgn(d.epsilon));
  if (n < 2) return rep;
  for (auto& e : conjugation_table(g, n - 1, n)) {
    if (primed_family(e) != d.family || e.branch != d.branch) continue;
    InstanceResult r;
    r.g = g;
    r.n = n;
    r.kase = e.kase();
    try {
      DeltaContext ctx(g, n, e.env);
      DeltaExpr start = ctx.parse_expr(d.start), end = ctx.parse_expr(d.end);
      std::vector<DerivationStep> steps;
      for (auto& s : d.steps) steps.push_back(instantiate(ctx, s));
      r.start_matches = ctx.evaluate(start) == e.rhs_word(g, MacroMode::full);
      Word f(e.conj);
      r.end_matches = ctx.evaluate(strip_central(end)) == conjugate(e.target_word(g, MacroMode::full), f);
      r.verdict = check_derivation(ctx, steps, start, end, d.epsilon);
    } catch (const std::exception& ex) {
      r.verdict.ok = false;
      r.verdict.error = ex.what();
    }
    rep.instances.push_back(std::move(r));
  }
  return rep;
}

std::vector<DerivationReport> replay_all(int gmax, int nmax, int jobs) {
  auto& all = builtin_derivations();
  auto one = [gmax, nmax](const Derivation& d) {
    DerivationReport merged = replay(d, 1, 1);
    for (int g = 1; g <= gmax; ++g)
      for (int n = 2; n <= nmax; ++n) {
        auto r = replay(d, g, n);
        for (auto& i : r.instances) merged.instances.push_back(std::move(i));
      }
    return merged;
  };
  std::vector<DerivationReport> out(all.size());
  if (jobs <= 1) {
    for (std::size_t q = 0; q < all.size(); ++q) out[q] = one(all[q]);
    return out;
  }
  std::vector<std::future<DerivationReport>> fut;
  for (auto& d : all) fut.push_back(std::async(std::launch::async, one, std::cref(d)));
  for (std::size_t q = 0; q < all.size(); ++q) out[q] = fut[q].get();
  return out;
}

const std::map<std::pair<std::string, std::string>, long>& epsilon_summary() {
  static const std::map<std::pair<std::string, std::string>, long> m = {
      {{"D1e'", "m=i+1"}, 2},  {{"D1d'", "m=i+1"}, 1}, {{"D2a'", "m=i-1"}, 1},
      {{"D2b'", "i=2"}, 1},    {{"D1b'", "i=2"}, -1},  {{"D1c'", "i=4"}, -1},
      {{"D1d'", "m=i-1"}, -1}, {{"D1b'", "i=1"}, -2},  {{"D1e'", "m=i"}, -2},
  };
  return m;
}

std::map<std::pair<std::string, std::string>, long> EpsilonTable::values() const {
  std::map<std::pair<std::string, std::string>, long> m;
  for (auto& [k, v] : entries) m[k] = v.value;
  return m;
}

EpsilonTable epsilon_table(int g, int n) {
  EpsilonTable T;
  std::map<std::pair<std::string, std::string>, const Derivation*> by_key;
  for (auto& d : builtin_derivations()) by_key[{d.family, d.branch}] = &d;
  auto& sum = epsilon_summary();
  for (auto& b : branch_catalog()) {
    std::pair<std::string, std::string> key{b.family + "'", b.branch};
    if (T.entries.count(key)) continue;
    EpsilonEntry ent{0, "default"};
    if (auto s = sum.find(key); s != sum.end()) ent = {s->second, "summary"};
    if (auto d = by_key.find(key); d != by_key.end()) {
      auto rep = replay(*d->second, g, n);
      if (rep.ok()) {
        ent = {d->second->epsilon, "derivation"};
      } else {
        T.warnings.push_back(key.first + " " + key.second + ": derivation fails at (" + std::to_string(g) +
                             "," + std::to_string(n) + "), keeping the " + ent.source + " value");
      }
      for (auto& w : rep.warnings) T.warnings.push_back(key.first + " " + key.second + ": " + w);
    }
    if (b.tail_exp != ent.value)
      T.warnings.push_back(key.first + " " + key.second + ": printed tail d^" + std::to_string(b.tail_exp) +
                           " but epsilon " + sgn(ent.value));
    T.entries[key] = ent;
  }
  return T;
}

}  // namespace mcgpres
