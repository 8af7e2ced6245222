#include "mcgpres/catalog.hpp"

#include <deque>
#include <functional>
#include <mutex>

namespace mcgpres {

void check_params(int g, int n) {
  if (g < 1) throw InvalidSurface("genus must be at least 1, got " + std::to_string(g));
  if (n < 0) throw InvalidSurface("boundary count must be nonnegative, got " + std::to_string(n));
}

namespace {

void need(bool ok, const std::string& what) {
  if (!ok) throw std::out_of_range("index out of range in " + what);
}

Word Wd(const Gen& g, long e = 1) { return Word(g, e); }

}  // namespace

MacroFn level_macros(int g, int k, MacroMode mode) {
  bool full = mode == MacroMode::full;
  auto P = [=](int i) {
    need(i >= 1 && i <= g - 1, "P(" + std::to_string(i) + ")");
    return full ? Wd(gen_asub(i, k)) * Wd(gen_a(i), -1) : Wd(gen_w(i));
  };
  auto R = [=](int i) {
    need(i >= 1 && i <= g, "R(" + std::to_string(i) + ")");
    return full ? Wd(gen_rsub(i, k)) : Wd(gen_z(i));
  };
  auto S = [=](int l) {
    need(l >= 1 && l <= k - 1, "S(" + std::to_string(l) + ")");
    return full ? Wd(gen_s(l, k)) * Wd(gen_d(l), -1) : Wd(gen_yloop(l));
  };
  auto Sb = [=](int l) {
    need(l >= 1 && l <= k - 1, "Sb(" + std::to_string(l) + ")");
    return full ? Wd(gen_sbar(l, k)) * Wd(gen_d(l), -1) : Wd(gen_ybar(l));
  };
  auto C = [=](int i) {
    need(i >= 1 && i <= g, "C(" + std::to_string(i) + ")");
    Word c;
    for (int q = 2; q <= i; ++q) c *= P(q - 1).inverse() * R(q);
    return c;
  };
  return [=](const std::string& name, const std::vector<int>& a) -> Word {
    auto arity = [&](std::size_t n) {
      if (a.size() != n) throw std::invalid_argument("wrong macro arity for " + name);
    };
    if (name == "P") return arity(1), P(a[0]);
    if (name == "R") return arity(1), R(a[0]);
    if (name == "S") return arity(1), S(a[0]);
    if (name == "Sb") return arity(1), Sb(a[0]);
    if (name == "Sbt") {
      arity(2);
      Word c = C(a[1]);
      return c.inverse() * Sb(a[0]) * c;
    }
    if (name == "K") {
      arity(1);
      need(a[0] >= 2 && a[0] <= g, "K");
      Word w;
      for (int q = a[0] - 1; q >= 2; --q) w *= P(q) * R(q).inverse();
      return w * P(1);
    }
    throw std::invalid_argument("unknown macro " + name);
  };
}

namespace {

using Guard = bool (*)(const Env&);

struct BranchSpec {
  const char* label;
  Guard guard;
  const char* rhs;
  int tail = 0;
  // 'k' for d_k, 'n' for d_{n-1}
  char tail_at = 'k';
};

struct FamilySpec {
  const char* tag;
  ConjKind conj;
  TargetKind target;
  std::vector<BranchSpec> branches;
};

struct CompiledBranch {
  BranchSpec spec;
  Formula rhs;
};

struct CompiledFamily {
  const char* tag;
  ConjKind conj;
  TargetKind target;
  std::vector<CompiledBranch> branches;
};

bool always(const Env&) { return true; }

#define G(expr) [](const Env& e) -> bool { \
  int i = e['i'], j = e['j'], m = e['m'], l = e['l'], t = e['t']; \
  (void)i; (void)j; (void)m; (void)l; (void)t; return (expr); }

const std::vector<FamilySpec>& family_specs() {
  static const std::vector<FamilySpec> specs = {
      {"D1a", ConjKind::a, TargetKind::P,
       {{"m=i-1", G(m == i - 1), "P(i) P(i-1)"},
        {"m=i+1", G(m == i + 1), "P(i+1)^-1 P(i)"},
        {"m!=i-1,i+1", always, "P(i)"}}},
      {"D1b", ConjKind::y, TargetKind::P,
       {{"i=1", G(i == 1), "P(1)^-1 R(2) R(1)", -2, 'n'},
        {"i=2", G(i == 2), "P(2) R(1)", -1, 'k'},
        {"i>=3", always, "P(i)"}}},
      {"D1c", ConjKind::b, TargetKind::P,
       {{"i=1", G(i == 1), "{P(3) P(1)}^-1 P(1) {P(3) P(1)}"},
        {"i=2", G(i == 2), "{P(3) P(1)}^-1 P(2) {P(3) P(1)}"},
        {"i=3", G(i == 3), "P(1)^-1 P(3) P(1)"},
        {"i=4", G(i == 4), "P(4) P(3) P(1)", -1, 'k'},
        {"i>=5", always, "P(i)"}}},
      {"D1d", ConjKind::a_sub, TargetKind::P,
       {{"m<=i-2", G(m <= i - 2), "[S(l)^-1, P(m)^-1]^-1 P(i) [S(l)^-1, P(m)^-1]"},
        {"m=i-1", G(m == i - 1), "[P(i-1)^-1, S(l)^-1] P(i) S(l) P(i-1)", -1, 'k'},
        {"m=i", G(m == i), "{S(l) P(i)}^-1 P(i) {S(l) P(i)}"},
        {"m=i+1", G(m == i + 1), "P(i+1)^-1 S(l)^-1 P(i)", 1, 'k'},
        {"m>=i+2", always, "P(i)"}}},
      {"D1e", ConjKind::r_sub, TargetKind::P,
       {{"m<=i-1", G(m <= i - 1), "[S(l)^-1, R(m)^-1]^-1 P(i) [S(l)^-1, R(m)^-1]"},
        {"m=i", G(m == i),
         "{R(i)^-1 S(l)^-1 R(i)} S(l) P(i) Sbt(l,i)^-1 {R(i)^-1 S(l)^-1 R(i)}^-1", -2, 'k'},
        {"m=i+1", G(m == i + 1), "R(i+1)^-1 S(l)^-1 R(i+1) Sbt(l,i+1) P(i)", 2, 'k'},
        {"m>=i+2", always, "P(i)"}}},
      {"D1f", ConjKind::s, TargetKind::P, {{"all", always, "P(i)"}}},
      {"D1g", ConjKind::s_bar, TargetKind::P,
       {{"i=1", G(i == 1),
         "[Sb(l)^-1, S(t)]^-1 S(l) P(1) R(1) Sb(t) R(1)^-1 S(l)^-1 R(1) Sb(t)^-1 R(1)^-1 "
         "[Sb(l)^-1, S(t)]"},
        {"i>=2", always,
         "{[Sb(l), S(t)^-1] [S(l), R(1) Sb(t)^-1 R(1)^-1]} P(i) "
         "{[Sb(l), S(t)^-1] [S(l), R(1) Sb(t)^-1 R(1)^-1]}^-1"}}},
      {"D2a", ConjKind::a, TargetKind::R,
       {{"m=i-1", G(m == i - 1), "R(i) R(i-1) P(i-1)^-1 R(i) P(i-1)", 1, 'k'},
        {"m=i", G(m == i), "P(i)^-1 R(i+1)^-1 P(i)"},
        {"m!=i-1,i", always, "R(i)"}}},
      {"D2b", ConjKind::y, TargetKind::R,
       {{"i=1", G(i == 1), "{P(1)^-1 R(2) R(1)}^-1 R(1)^-1 {P(1)^-1 R(2) R(1)}"},
        {"i=2", G(i == 2), "P(1) R(1) P(1)^-1 R(2) R(1)", 1, 'n'},
        {"i>=3", always, "R(i)"}}},
      {"D2c", ConjKind::b, TargetKind::R,
       {{"i=1", G(i == 1), "P(1)^-1 P(3)^-1 P(2)^-1 R(4)^-1 P(3) R(3)^-1 P(2) R(2)^-1 P(1)"},
        {"i=2", G(i == 2),
         "{P(3) P(1)}^-1 P(1) P(3) R(2) R(1) P(1)^-1 R(2) P(2)^-1 R(3) P(3)^-1 R(4) P(2) "
         "{P(3) P(1)}"},
        {"i=3", G(i == 3),
         "{P(3) P(1)}^-1 R(4)^-1 P(3) R(3)^-1 P(2) R(2)^-1 P(1) R(1)^-1 P(2)^-1 R(3) "
         "P(3)^-1 P(1)^-1 {P(3) P(1)}"},
        {"i=4", G(i == 4), "R(4) P(2) R(1) P(1)^-1 R(2) P(2)^-1 R(3) P(3)^-1 R(4) P(3) P(1)"},
        {"i>=5", always, "R(i)"}}},
      {"D2d", ConjKind::a_sub, TargetKind::R,
       {{"m<=i-2", G(m <= i - 2), "[S(l)^-1, P(m)^-1]^-1 R(i) [S(l)^-1, P(m)^-1]"},
        {"m=i-1", G(m == i - 1),
         "{S(l) P(i-1)}^-1 P(i-1) S(l) R(i) R(i-1) P(i-1)^-1 R(i) Sbt(l,i) {S(l) P(i-1)}"},
        {"m=i", G(m == i), "P(i)^-1 S(l)^-1 R(i+1)^-1 P(i) Sbt(l,i)^-1"},
        {"m>=i+1", always, "R(i)"}}},
      {"D2e", ConjKind::r_sub, TargetKind::R,
       {{"m<=i-1", G(m <= i - 1), "[S(l)^-1, R(m)^-1]^-1 R(i) [S(l)^-1, R(m)^-1]"},
        {"m=i", G(m == i), "{S(l) R(i)}^-1 R(i) {S(l) R(i)}"},
        {"m>=i+1", always, "R(i)"}}},
      {"D2f", ConjKind::s, TargetKind::R, {{"all", always, "R(i)"}}},
      {"D2g", ConjKind::s_bar, TargetKind::R,
       {{"i=1", G(i == 1), "[S(t), Sb(l)^-1] [R(1) Sb(t) R(1)^-1, S(l)^-1] R(1)"},
        {"i>=2", always,
         "{[Sb(l), S(t)^-1] [S(l), R(1) Sb(t)^-1 R(1)^-1]}^-1 R(i) "
         "{[Sb(l), S(t)^-1] [S(l), R(1) Sb(t)^-1 R(1)^-1]}"}}},
      {"D3a", ConjKind::a, TargetKind::S, {{"all", always, "S(j)"}}},
      {"D3b", ConjKind::y, TargetKind::S, {{"all", always, "S(j)"}}},
      {"D3c", ConjKind::b, TargetKind::S, {{"all", always, "S(j)"}}},
      {"D3d", ConjKind::a_sub, TargetKind::S,
       {{"l>j", G(l > j), "[S(l)^-1, P(m)^-1]^-1 S(j) [S(l)^-1, P(m)^-1]"},
        {"l=j", G(l == j), "P(m)^-1 S(j) P(m)"},
        {"l<j", always, "S(j)"}}},
      {"D3e", ConjKind::r_sub, TargetKind::S,
       {{"l>j", G(l > j), "[S(l)^-1, R(m)^-1]^-1 S(j) [S(l)^-1, R(m)^-1]"},
        {"l=j", G(l == j), "R(m)^-1 S(j) R(m)"},
        {"l<j", always, "S(j)"}}},
      {"D3f", ConjKind::s, TargetKind::S,
       {{"l=j", G(l == j), "{S(t) S(j)}^-1 S(j) {S(t) S(j)}"},
        {"l<j<t", G(l < j && j < t), "[S(t)^-1, S(l)^-1]^-1 S(j) [S(t)^-1, S(l)^-1]"},
        {"t=j", G(t == j), "S(l)^-1 S(j) S(l)"},
        {"other", always, "S(j)"}}},
      {"D3g", ConjKind::s_bar, TargetKind::S,
       {{"l>j", G(l > j),
         "{[Sb(l), S(t)^-1] [S(l), R(1) Sb(t)^-1 R(1)^-1]}^-1 S(j) "
         "{[Sb(l), S(t)^-1] [S(l), R(1) Sb(t)^-1 R(1)^-1]}"},
        {"l=j", G(l == j),
         "{[Sb(j), S(t)^-1] S(j) R(1) Sb(t)^-1 R(1)^-1}^-1 S(j) "
         "{[Sb(j), S(t)^-1] S(j) R(1) Sb(t)^-1 R(1)^-1}"},
        {"l<j<t", G(l < j && j < t), "[Sb(l)^-1, S(t)]^-1 S(j) [Sb(l)^-1, S(t)]"},
        {"t=j", G(t == j), "{Sb(l) S(j)^-1}^-1 S(j) {Sb(l) S(j)^-1}"},
        {"t<j", always, "S(j)"}}},
      {"D4a", ConjKind::a, TargetKind::Sb,
       {{"m=1", G(m == 1), "{R(1)^-1 R(2)^-1 P(1)}^-1 Sb(j) {R(1)^-1 R(2)^-1 P(1)}"},
        {"m>=2", always, "Sb(j)"}}},
      {"D4b", ConjKind::y, TargetKind::Sb,
       {{"all", always, "{R(1)^-1 P(1)^-2 R(2) R(1)}^-1 Sb(j) {R(1)^-1 P(1)^-2 R(2) R(1)}"}}},
      {"D4c", ConjKind::b, TargetKind::Sb,
       {{"all", always,
         "{R(1)^-1 P(2)^-1 R(4)^-1 P(3) R(3)^-1 P(2) R(2)^-1 P(1)}^-1 Sb(j) "
         "{R(1)^-1 P(2)^-1 R(4)^-1 P(3) R(3)^-1 P(2) R(2)^-1 P(1)}"}}},
      {"D4d", ConjKind::a_sub, TargetKind::Sb,
       {{"m=1,l<j", G(m == 1 && l < j),
         "{R(1)^-1 R(2)^-1 P(1) Sb(l)^-1}^-1 Sb(j) {R(1)^-1 R(2)^-1 P(1) Sb(l)^-1}"},
        {"m=1,l>j", G(m == 1 && l > j),
         "{Sb(l)^-1 R(1)^-1 R(2)^-1 P(1)}^-1 Sb(j) {Sb(l)^-1 R(1)^-1 R(2)^-1 P(1)}"},
        {"m>=2,l=j", G(m >= 2 && l == j), "K(m)^-1 Sbt(j,m+1) K(m)"},
        {"m>=2,l>j", G(m >= 2 && l > j),
         "K(m)^-1 {Sbt(l,m)^-1 R(m)^-1 Sbt(l,m+1)}^-1 Sbt(j,m) "
         "{Sbt(l,m)^-1 R(m)^-1 Sbt(l,m+1)} K(m)"},
        {"other", always, "Sb(j)"}}},
      {"D4e", ConjKind::r_sub, TargetKind::Sb,
       {{"m=1,l<j", G(m == 1 && l < j),
         "{R(1)^-1 Sb(l)^-1 S(l) R(1)}^-1 Sb(j) {R(1)^-1 Sb(l)^-1 S(l) R(1)}"},
        {"m=1,l=j", G(m == 1 && l == j), "{S(j) R(1)}^-1 Sb(j) {S(j) R(1)}"},
        {"m=1,l>j", G(m == 1 && l > j),
         "{Sb(l)^-1 R(1)^-1 S(l) R(1)}^-1 Sb(j) {Sb(l)^-1 R(1)^-1 S(l) R(1)}"},
        {"m>=2,l=j", G(m >= 2 && l == j), "K(m)^-1 Sbt(j,m) K(m)"},
        {"m>=2,l>j", G(m >= 2 && l > j),
         "K(m)^-1 {Sbt(l,m)^-1 R(m)^-1 Sbt(l,m)}^-1 Sbt(j,m) "
         "{Sbt(l,m)^-1 R(m)^-1 Sbt(l,m)} K(m)"},
        {"m>=2,l<j", always, "Sb(j)"}}},
      {"D4f", ConjKind::s, TargetKind::Sb,
       {{"t=j", G(t == j), "Sb(l)^-1 Sb(j) Sb(l)"},
        {"l<j<t", G(l < j && j < t), "[Sb(t)^-1, Sb(l)^-1]^-1 Sb(j) [Sb(t)^-1, Sb(l)^-1]"},
        {"l=j", G(l == j), "{Sb(t) Sb(j)}^-1 Sb(j) {Sb(t) Sb(j)}"},
        {"other", always, "Sb(j)"}}},
      {"D4g", ConjKind::s_bar, TargetKind::Sb,
       {{"t<j", G(t < j),
         "[Sb(t), R(1)^-1 S(l)^-1 R(1)]^-1 Sb(j) [Sb(t), R(1)^-1 S(l)^-1 R(1)]"},
        {"t=j", G(t == j), "{R(1)^-1 S(l)^-1 R(1)} Sb(j) {R(1)^-1 S(l)^-1 R(1)}^-1"},
        {"l=j", G(l == j), "S(t) Sb(j) S(t)^-1"},
        {"l>j", G(l > j), "[Sb(l)^-1, S(t)]^-1 Sb(j) [Sb(l)^-1, S(t)]"},
        {"l<j<t", always, "Sb(j)"}}},
      {"D0", ConjKind::d, TargetKind::P, {{"conj", always, "P(i)"}}},
      {"D0", ConjKind::d, TargetKind::R, {{"conj", always, "R(i)"}}},
      {"D0", ConjKind::d, TargetKind::S, {{"conj", always, "S(j)"}}},
      {"D0", ConjKind::d, TargetKind::Sb, {{"conj", always, "Sb(j)"}}},
  };
  return specs;
}

#undef G

const std::vector<CompiledFamily>& compiled_families() {
  static const std::vector<CompiledFamily> fams = [] {
    std::vector<CompiledFamily> out;
    for (auto& f : family_specs()) {
      CompiledFamily cf{f.tag, f.conj, f.target, {}};
      for (auto& b : f.branches) cf.branches.push_back({b, Formula(b.rhs)});
      out.push_back(std::move(cf));
    }
    return out;
  }();
  return fams;
}

// Conjugator index tuples (m, l, t) at level k.
std::vector<std::pair<Gen, Env>> conjugators(ConjKind kind, int g, int k) {
  std::vector<std::pair<Gen, Env>> out;
  Env e;
  switch (kind) {
    case ConjKind::a:
      for (int m = 1; m <= g - 1; ++m) {
        e['m'] = m;
        out.emplace_back(gen_a(m), e);
      }
      break;
    case ConjKind::y:
      if (g >= 2) out.emplace_back(gen_y(), e);
      break;
    case ConjKind::b:
      if (g >= 4) out.emplace_back(gen_b(), e);
      break;
    case ConjKind::a_sub:
      for (int l = 1; l < k; ++l)
        for (int m = 1; m <= g - 1; ++m) {
          e['m'] = m;
          e['l'] = l;
          out.emplace_back(gen_asub(m, l), e);
        }
      break;
    case ConjKind::r_sub:
      for (int l = 1; l < k; ++l)
        for (int m = 1; m <= g; ++m) {
          e['m'] = m;
          e['l'] = l;
          out.emplace_back(gen_rsub(m, l), e);
        }
      break;
    case ConjKind::s:
    case ConjKind::s_bar:
      for (int t = 2; t < k; ++t)
        for (int l = 1; l < t; ++l) {
          e['l'] = l;
          e['t'] = t;
          out.emplace_back(kind == ConjKind::s ? gen_s(l, t) : gen_sbar(l, t), e);
        }
      break;
    case ConjKind::d:
      for (int l = 1; l < k; ++l) {
        e['l'] = l;
        out.emplace_back(gen_d(l), e);
      }
      break;
  }
  return out;
}

std::vector<int> target_range(TargetKind t, int g, int k) {
  std::vector<int> r;
  int hi = t == TargetKind::P ? g - 1 : t == TargetKind::R ? g : k - 1;
  for (int i = 1; i <= hi; ++i) r.push_back(i);
  return r;
}

const char* target_macro(TargetKind t) {
  switch (t) {
    case TargetKind::P: return "P";
    case TargetKind::R: return "R";
    case TargetKind::S: return "S";
    case TargetKind::Sb: return "Sb";
  }
  return "?";
}

}  // namespace

std::string ConjEntry::kase() const {
  return branch + "; k=" + std::to_string(k) + " f=" + conj.name() + " x=" +
         target_macro(target) + std::to_string(target_index);
}

Word ConjEntry::target_word(int g, MacroMode mode) const {
  return level_macros(g, k, mode)(target_macro(target), {target_index});
}

Word ConjEntry::rhs_word(int g, MacroMode mode) const {
  return rhs->eval(env, level_macros(g, k, mode));
}

Word ConjEntry::relator(int g) const {
  Word f(conj);
  return f * target_word(g, MacroMode::full) * f.inverse() *
         Word(gen_d(tail_index), -tail_exp) * rhs_word(g, MacroMode::full).inverse();
}

Word ConjEntry::primed_relator(int g) const {
  Word f(conj);
  return f * target_word(g, MacroMode::full) * f.inverse() *
         rhs_word(g, MacroMode::full).inverse();
}

std::string primed_family(const ConjEntry& e) {
  if (e.conj.fam == Family::d) return std::string("D") + "1234"[static_cast<int>(e.target)] + "h'";
  return e.family + "'";
}

std::vector<BranchInfo> branch_catalog() {
  std::vector<BranchInfo> out;
  for (auto& f : family_specs())
    for (auto& b : f.branches) {
      std::string fam = f.conj == ConjKind::d
                            ? std::string("D") + "1234"[static_cast<int>(f.target)] + "h"
                            : std::string(f.tag);
      out.push_back({fam, b.label, b.tail, b.tail_at});
    }
  return out;
}

std::vector<ConjEntry> conjugation_table(int g, int k, int n) {
  std::vector<ConjEntry> out;
  for (auto& fam : compiled_families()) {
    for (auto& [f, ce] : conjugators(fam.conj, g, k)) {
      for (int x : target_range(fam.target, g, k)) {
        Env e = ce;
        e['g'] = g;
        e['k'] = k;
        e['n'] = n;
        if (fam.target == TargetKind::P || fam.target == TargetKind::R)
          e['i'] = x;
        else
          e['j'] = x;
        const CompiledBranch* hit = nullptr;
        for (auto& b : fam.branches)
          if (b.spec.guard(e)) {
            hit = &b;
            break;
          }
        ConjEntry ent;
        ent.family = fam.tag;
        ent.branch = hit->spec.label;
        ent.env = e;
        ent.k = k;
        ent.conj = f;
        ent.target = fam.target;
        ent.target_index = x;
        ent.rhs = &hit->rhs;
        ent.tail_exp = hit->spec.tail;
        ent.tail_index = hit->spec.tail_at == 'n' ? n - 1 : k;
        ent.quarantined = hit->spec.tail_at == 'n' && k < n - 1;
        out.push_back(std::move(ent));
      }
    }
  }
  return out;
}

std::vector<Gen> base_generators(int g) {
  std::vector<Gen> v;
  for (int i = 1; i <= g - 1; ++i) v.push_back(gen_a(i));
  if (g >= 2) v.push_back(gen_y());
  if (g >= 4) v.push_back(gen_b());
  return v;
}

std::vector<Gen> level_generators(int g, int k) {
  std::vector<Gen> v;
  for (int i = 1; i <= g - 1; ++i) v.push_back(gen_asub(i, k));
  for (int i = 1; i <= g; ++i) v.push_back(gen_rsub(i, k));
  for (int l = 1; l < k; ++l) v.push_back(gen_s(l, k));
  for (int l = 1; l < k; ++l) v.push_back(gen_sbar(l, k));
  return v;
}

Alphabet full_alphabet(int g, int n) {
  Alphabet A(base_generators(g));
  for (int j = 1; j <= n - 1; ++j) A.add(gen_d(j));
  for (int k = 1; k <= n - 1; ++k)
    for (auto& x : level_generators(g, k)) A.add(x);
  return A;
}

std::size_t generator_count(int g, int n) {
  return full_alphabet(g, std::max(n, 1)).size();
}

namespace {

Word b_word(int i) {
  if (i == 0) return Word(gen_a(1));
  if (i == 1) return Word(gen_b());
  int h = i - 1;
  Word bm1 = b_word(h - 1), bh = b_word(h);
  Word mid;
  for (int q = 2 * h; q <= 2 * h + 3; ++q) mid *= Word(gen_a(q));
  return (bm1 * mid * bh).pow(5) * (bm1 * mid).pow(-6);
}

struct BaseRule {
  const char* tag;
  const char* text;
};

}  // namespace

Presentation base_presentation(int g) {
  check_params(g, 1);
  Presentation P;
  P.genus = g;
  P.boundary = 1;
  P.alphabet = Alphabet(base_generators(g));
  if (g == 1) return P;
  if (g == 2) {
    P.add_relator(parse_word("y*a1*y^-1*a1"), "B5", "g=2");
    return P;
  }
  MacroFn bmac = [](const std::string& name, const std::vector<int>& a) -> Word {
    if (name != "B" || a.size() != 1) throw std::invalid_argument("unknown macro " + name);
    return b_word(a[0]);
  };
  Env e;
  e['g'] = g;
  auto add = [&](const char* tag, const std::string& kase, const char* text) {
    P.add_relator(Formula(text).eval(e, bmac), tag, kase);
  };
  if (g >= 4)
    for (int i = 1; i <= g - 1; ++i)
      for (int j = i + 2; j <= g - 1; ++j) {
        e['i'] = i;
        e['j'] = j;
        add("A1", "i=" + std::to_string(i) + ",j=" + std::to_string(j), "[a<i>, a<j>]");
      }
  for (int i = 1; i <= g - 2; ++i) {
    e['i'] = i;
    add("A2", "i=" + std::to_string(i), "a<i> a<i+1> a<i> = a<i+1> a<i> a<i+1>");
  }
  if (g >= 4)
    for (int i = 1; i <= g - 1; ++i) {
      if (i == 4) continue;
      e['i'] = i;
      add("A3", "i=" + std::to_string(i), "[a<i>, b]");
    }
  if (g >= 5) add("A4", "", "a4 b a4 = b a4 b");
  if (g >= 5) add("A5", "", "(a2 a3 a4 b)^10 = (a1 a2 a3 a4 b)^6");
  if (g >= 7) add("A6", "", "(a2 a3 a4 a5 a6 b)^12 = (a1 a2 a3 a4 a5 a6 b)^9");
  if (g == 6) add("A9a", "", "[B(2), b]");
  if (g >= 8 && g % 2 == 0) add("A9b", "", "[a<g-5>, B((g-2)/2)]");
  if (g >= 4)
    add("B1", "",
        "y (a2 a3 a1 a2 y a2^-1 a1^-1 a3^-1 a2^-1) = (a2 a3 a1 a2 y a2^-1 a1^-1 a3^-1 a2^-1) y");
  add("B2", "", "y (a2 a1 y^-1 a2^-1 y a1 a2) y = a1 (a2 a1 y^-1 a2^-1 y a1 a2) a1");
  if (g >= 4)
    for (int i = 3; i <= g - 1; ++i) {
      e['i'] = i;
      add("B3", "i=" + std::to_string(i), "[a<i>, y]");
    }
  add("B4", "", "a2 (y a2 y^-1) = (y a2 y^-1) a2");
  add("B5", "", "y a1 = a1^-1 y");
  if (g >= 4)
    add("B6", "",
        "b y b y^-1 = {a1 a2 a3 (y^-1 a2 y) a3^-1 a2^-1 a1^-1} {a2^-1 a3^-1 (y a2 y^-1) a3 a2}");
  if (g >= 6)
    add("B7", "",
        "[(a4 a5 a3 a4 a2 a3 a1 a2 y a2^-1 a1^-1 a3^-1 a2^-1 a4^-1 a3^-1 a5^-1 a4^-1), b]");
  if (g >= 5)
    add("B8", "",
        "{(y a1^-1 a2^-1 a3^-1 a4^-1) b (a4 a3 a2 a1 y^-1)} {(a1^-1 a2^-1 a3^-1 a4^-1) b^-1 "
        "(a4 a3 a2 a1)} = {(a4^-1 a3^-1 a2^-1) y (a2 a3 a4)} {a3^-1 a2^-1 y^-1 a2 a3} "
        "{a2^-1 y a2} y^-1");
  return P;
}

namespace {

std::vector<Relator> central_relators(int g, int k) {
  std::vector<Relator> out;
  Gen dk = gen_d(k);
  Alphabet A = full_alphabet(g, k + 1);
  for (auto& x : A.gens()) {
    if (x == dk) continue;
    out.push_back({commutator(Word(dk), Word(x)), "D0",
                   "central; k=" + std::to_string(k) + " x=" + x.name()});
  }
  return out;
}

}  // namespace

std::vector<Relator> boundary_relators(int g, int n) {
  std::vector<Relator> out;
  for (int k = 1; k <= n - 1; ++k) {
    auto c = central_relators(g, k);
    out.insert(out.end(), c.begin(), c.end());
    for (auto& e : conjugation_table(g, k, n)) out.push_back({e.relator(g), e.family, e.kase()});
  }
  return out;
}

std::vector<Relator> primed_relators(int g, int n) {
  std::vector<Relator> out;
  if (n < 2) return out;
  for (auto& e : conjugation_table(g, n - 1, n))
    out.push_back({e.primed_relator(g), primed_family(e), e.kase()});
  return out;
}

std::vector<std::pair<std::string, std::string>> quarantined_relators(int g, int n) {
  std::vector<std::pair<std::string, std::string>> out;
  for (int k = 1; k <= n - 1; ++k)
    for (auto& e : conjugation_table(g, k, n))
      if (e.quarantined) out.emplace_back(e.family, e.kase());
  return out;
}

Presentation full_presentation(int g, int n) {
  check_params(g, n);
  bool closed = n == 0;
  if (closed) n = 1;
  Presentation P = base_presentation(g);
  P.boundary = n;
  P.alphabet = full_alphabet(g, n);
  for (auto& r : boundary_relators(g, n)) P.relators.push_back(std::move(r));
  if (closed) P.flags.push_back("closed surface requested; emitted the one-boundary presentation");
  for (auto& [fam, kase] : quarantined_relators(g, n))
    P.flags.push_back("quarantine " + fam + " " + kase + ": d_{n-1} tail printed for k<n-1");
  return P;
}

Word sbar_tri_word(int j, int k, int i) {
  if (!(i >= 2 && j >= 1 && j < k)) throw std::out_of_range("sbar_tri_word index out of range");
  // genus only bounds i from above; any g >= i gives the same word
  auto mac = level_macros(i, k, MacroMode::full);
  Word c;
  for (int q = 2; q <= i; ++q) c *= mac("P", {q - 1}).inverse() * mac("R", {q});
  return c.inverse() * Word(gen_sbar(j, k)) * c;
}

namespace {

bool g_at_least(int g, int lo) { return g >= lo; }

}  // namespace

const std::vector<FamilyInfo>& family_catalog() {
  static const std::vector<FamilyInfo> fams = [] {
    std::vector<FamilyInfo> v = {
        {"A1", [](int g, int) { return g_at_least(g, 4); }},
        {"A2", [](int g, int) { return g_at_least(g, 3); }},
        {"A3", [](int g, int) { return g_at_least(g, 4); }},
        {"A4", [](int g, int) { return g_at_least(g, 5); }},
        {"A5", [](int g, int) { return g_at_least(g, 5); }},
        {"A6", [](int g, int) { return g_at_least(g, 7); }},
        {"A9a", [](int g, int) { return g == 6; }},
        {"A9b", [](int g, int) { return g >= 8 && g % 2 == 0; }},
        {"B1", [](int g, int) { return g_at_least(g, 4); }},
        {"B2", [](int g, int) { return g_at_least(g, 3); }},
        {"B3", [](int g, int) { return g_at_least(g, 4); }},
        {"B4", [](int g, int) { return g_at_least(g, 3); }},
        {"B5", [](int g, int) { return g_at_least(g, 2); }},
        {"B6", [](int g, int) { return g_at_least(g, 4); }},
        {"B7", [](int g, int) { return g_at_least(g, 6); }},
        {"B8", [](int g, int) { return g_at_least(g, 5); }},
        {"D0", [](int, int n) { return n >= 2; }},
        {"D1a", [](int g, int n) { return n >= 2 && g >= 3; }},
        {"D1b", [](int g, int n) { return n >= 2 && g >= 2; }},
        {"D1c", [](int g, int n) { return n >= 2 && g >= 4; }},
        {"D1d", [](int g, int n) { return n >= 3 && g >= 2; }},
        {"D1e", [](int g, int n) { return n >= 3 && g >= 2; }},
        {"D1f", [](int g, int n) { return n >= 4 && g >= 2; }},
        {"D1g", [](int g, int n) { return n >= 4 && g >= 2; }},
        {"D2a", [](int g, int n) { return n >= 2 && g >= 2; }},
        {"D2b", [](int g, int n) { return n >= 2 && g >= 2; }},
        {"D2c", [](int g, int n) { return n >= 2 && g >= 4; }},
        {"D2d", [](int g, int n) { return n >= 3 && g >= 2; }},
        {"D2e", [](int, int n) { return n >= 3; }},
        {"D2f", [](int, int n) { return n >= 4; }},
        {"D2g", [](int, int n) { return n >= 4; }},
        {"D3a", [](int g, int n) { return n >= 3 && g >= 2; }},
        {"D3b", [](int g, int n) { return n >= 3 && g >= 2; }},
        {"D3c", [](int g, int n) { return n >= 3 && g >= 4; }},
        {"D3d", [](int g, int n) { return n >= 3 && g >= 2; }},
        {"D3e", [](int, int n) { return n >= 3; }},
        {"D3f", [](int, int n) { return n >= 4; }},
        {"D3g", [](int, int n) { return n >= 4; }},
        {"D4a", [](int g, int n) { return n >= 3 && g >= 2; }},
        {"D4b", [](int g, int n) { return n >= 3 && g >= 2; }},
        {"D4c", [](int g, int n) { return n >= 3 && g >= 4; }},
        {"D4d", [](int g, int n) { return n >= 3 && g >= 2; }},
        {"D4e", [](int, int n) { return n >= 3; }},
        {"D4f", [](int, int n) { return n >= 4; }},
        {"D4g", [](int, int n) { return n >= 4; }},
    };
    return v;
  }();
  return fams;
}

Word schema_instance(const SchemaData& d) {
  auto tw = [](const SignedCurve& c) { return Word(gen_twist(c.curve, c.orient), c.eps); };
  auto count = [&](std::size_t nc, std::size_t nb, const char* what) {
    if (d.curves.size() != nc || d.boundary.size() != nb)
      throw SchemaError(std::string("malformed curve tuple for ") + what);
  };
  switch (d.kind) {
    case Schema::chain: {
      std::size_t k = d.curves.size();
      if (k == 0) throw SchemaError("empty chain");
      if (d.boundary.size() != (k % 2 ? 2u : 1u)) throw SchemaError("chain boundary count");
      Word c;
      for (auto& x : d.curves) c *= tw(x);
      Word rhs = tw(d.boundary[0]);
      if (k % 2) rhs *= tw(d.boundary[1]);
      return c.pow(k % 2 ? static_cast<long>(k + 1) : static_cast<long>(2 * k + 2)) *
             rhs.inverse();
    }
    case Schema::lantern: {
      count(3, 4, "lantern");
      Word lhs = tw(d.curves[0]) * tw(d.curves[1]) * tw(d.curves[2]);
      Word rhs;
      for (auto& b : d.boundary) rhs *= tw(b);
      return lhs * rhs.inverse();
    }
    case Schema::braid: {
      count(2, 1, "braid");
      return conjugate(tw(d.curves[1]), tw(d.curves[0])) * tw(d.boundary[0]).inverse();
    }
    case Schema::crosscap_product: {
      count(3, 0, "crosscap product");
      auto Y = [&](const SignedCurve& a) { return Word(gen_cross_y(d.mu, a.curve, a.orient)); };
      return Y(d.curves[2]) * (Y(d.curves[0]) * Y(d.curves[1])).inverse();
    }
    case Schema::crosscap_to_twists: {
      count(1, 2, "crosscap to twists");
      Word Y(gen_cross_y(d.mu, d.curves[0].curve, d.curves[0].orient));
      SignedCurve d2 = d.boundary[1];
      d2.eps = -d2.eps;
      return Y * (tw(d.boundary[0]) * tw(d2)).inverse();
    }
    case Schema::kill_trivial:
      count(1, 0, "trivial twist");
      return tw(d.curves[0]);
    case Schema::twist_involution: {
      count(1, 0, "twist involution");
      const auto& c = d.curves[0];
      return Word(gen_twist(c.curve, '+')) * Word(gen_twist(c.curve, '-'));
    }
    case Schema::slide_involution: {
      count(1, 0, "slide involution");
      const auto& a = d.curves[0];
      return Word(gen_cross_y(d.mu, a.curve, '+')) * Word(gen_cross_y(d.mu, "-" + a.curve, '+'));
    }
  }
  throw SchemaError("unknown schema");
}

}  // namespace mcgpres
