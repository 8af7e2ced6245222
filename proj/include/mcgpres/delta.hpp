#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcgpres/formula.hpp"
#include "mcgpres/word.hpp"

namespace mcgpres {

// A loop at the puncture: a free word over x_1..x_g, y_1..y_{n-2}, where
// opaque image letters f(gamma) may stand for loops known only through f.
struct Loop {
  Word w;
  std::string name;
};

struct DeltaFactor {
  enum class Kind { delta, gen, central };
  Kind kind = Kind::gen;
  // loop word for delta, generator word for gen
  Word w;
  long k = 0;

  static DeltaFactor delta(const Word& loop);
  static DeltaFactor gen(const Word& w);
  static DeltaFactor central(long k);
  DeltaFactor inverse() const;
  bool operator==(const DeltaFactor&) const = default;
  std::string str() const;
};

using DeltaExpr = std::vector<DeltaFactor>;

std::string expr_str(const DeltaExpr& e);
// drops trivial factors and collects central powers into one trailing factor
DeltaExpr normalize(const DeltaExpr& e);
long central_power(const DeltaExpr& e);

enum class Rule { L_PLUS, L_MINUS, L_ZERO, CONJ_PUSH, SUBST_GEN, LEDGER_ACTION };
const char* rule_tag(Rule r);
Rule rule_from_tag(const std::string& s);

struct Replacement {
  // index into the expression before the step, or a literal factor
  int ref = -1;
  bool inv = false;
  DeltaFactor f;
};

struct DerivationStep {
  Rule rule = Rule::L_ZERO;
  int at = 0;
  int len = 1;
  int eps = 0;
  std::vector<Replacement> with;
  std::string fact;
  // fold replaces the right side of a fact by its left side
  bool fold = false;
  Loop push;
};

struct DerivationError : std::runtime_error {
  std::size_t step;
  DerivationError(std::size_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step(step) {}
};

struct UnnamedLoop : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// One identity f(gamma) = w between loops, read off the planar model.
struct LoopFact {
  std::string key;
  std::string lhs;
  std::string rhs;
  std::string note;
};

class LoopLedger {
 public:
  static const LoopLedger& builtin();
  explicit LoopLedger(const std::string& json_text);
  const LoopFact* find(const std::string& key) const;
  const std::vector<LoopFact>& facts() const { return facts_; }

 private:
  std::vector<LoopFact> facts_;
};

// Level k = n-1 context: named loops, image letters and the push map.
class DeltaContext {
 public:
  DeltaContext(int g, int n, Env env = {});
  int g() const { return g_; }
  int n() const { return n_; }
  const Env& env() const { return env_; }

  std::optional<Word> named(const Word& loop) const;
  // the point-pushing image of a named loop; throws UnnamedLoop
  Word delta_assign(const Word& loop) const;

  // f(gamma) as a single image letter (or gamma itself when f is trivial)
  Word image(const DeltaFactor& acting, const Word& loop) const;
  struct ImageDef {
    DeltaFactor acting;
    Word loop;
  };
  const ImageDef& image_def(const Gen& s) const;

  // "G: formula" | "W: word" | "D: loop" | "d: k"
  DeltaFactor parse_factor(const std::string& text) const;
  // loop text; "@[acting | loop]" writes an image letter
  Word parse_loop(const std::string& text) const;
  DeltaExpr parse_expr(const std::vector<std::string>& factors) const;

  // the word in the M(N_{g,n}) alphabet a factor stands for; Delta of an
  // unnamed loop becomes an opaque letter
  Word evaluate(const DeltaFactor& f) const;
  Word evaluate(const DeltaExpr& e) const;

  // mod-2 class of a loop in H_1(N_{g,n}) with the puncture class dropped
  std::uint64_t loop_class(const Word& loop) const;
  std::uint64_t act(const DeltaFactor& acting, std::uint64_t v) const;

 private:
  int g_, n_;
  Env env_;
  MacroFn full_;
  MacroFn loops_;
  std::map<Word, Word> named_;
  mutable std::map<Gen, ImageDef> images_;
};

DeltaExpr apply_step(const DeltaContext& ctx, const DeltaExpr& e, const DerivationStep& s,
                     const LoopLedger& ledger = LoopLedger::builtin());

struct FactCheck {
  std::string key;
  bool ok = true;
  std::string detail;
};

// lhs and rhs of a fact agree on homology classes
FactCheck check_fact(const DeltaContext& ctx, const LoopFact& f);

struct Verdict {
  bool ok = false;
  long net = 0;
  long epsilon = 0;
  DeltaExpr end;
  std::vector<FactCheck> facts;
  std::string error;
};

// Replays the steps. The derivation runs from the right side w of a relation
// to f x f^-1; collecting d^N on the way means f x f^-1 = w d^-N, so the
// relation's epsilon is -N.
Verdict check_derivation(const DeltaContext& ctx, const std::vector<DerivationStep>& deriv,
                         const DeltaExpr& start, const DeltaExpr& claimed_end,
                         long claimed_epsilon, const LoopLedger& ledger = LoopLedger::builtin());

// A stored derivation for one (family', branch). Texts carry index slots
// and are instantiated at every matching entry of the conjugation table.
struct StepRecord {
  std::string rule;
  int at = 0;
  int len = 1;
  int eps = 0;
  // literal factor texts, or "#q" / "#q^-1" for factor q before the step
  std::vector<std::string> with;
  std::string fact;
  bool fold = false;
  std::string push;
};

struct Derivation {
  std::string family;
  std::string branch;
  std::string note;
  std::vector<std::string> start;
  std::vector<std::string> end;
  std::vector<StepRecord> steps;
  long epsilon = 0;
  // the value a worked sentence states, when it differs from the replay
  std::optional<long> stated;
};

Derivation parse_derivation(const std::string& json_text);
const std::vector<Derivation>& builtin_derivations();

struct InstanceResult {
  int g = 0;
  int n = 0;
  std::string kase;
  bool start_matches = false;
  bool end_matches = false;
  Verdict verdict;
  bool ok() const { return start_matches && end_matches && verdict.ok; }
};

struct DerivationReport {
  std::string family;
  std::string branch;
  long epsilon = 0;
  std::vector<InstanceResult> instances;
  std::vector<std::string> warnings;
  bool ok() const;
  std::string str() const;
};

// replays d at every matching entry of conjugation_table(g, n-1, n)
DerivationReport replay(const Derivation& d, int g, int n);
// all builtin derivations over 1<=g<=gmax, 2<=n<=nmax
std::vector<DerivationReport> replay_all(int gmax, int nmax, int jobs = 1);

struct EpsilonEntry {
  long value = 0;
  // "derivation", "summary" or "default"
  std::string source;
};

struct EpsilonTable {
  std::map<std::pair<std::string, std::string>, EpsilonEntry> entries;
  std::vector<std::string> warnings;
  std::map<std::pair<std::string, std::string>, long> values() const;
};

// summary values as printed, keyed by (family', branch)
const std::map<std::pair<std::string, std::string>, long>& epsilon_summary();
EpsilonTable epsilon_table(int g, int n);

}  // namespace mcgpres
