#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "mcgpres/catalog.hpp"
#include "mcgpres/delta.hpp"
#include "mcgpres/extension.hpp"
#include "mcgpres/homology.hpp"
#include "mcgpres/serialize.hpp"
#include "mcgpres/subgroup.hpp"

using namespace mcgpres;
using nlohmann::json;

namespace {

struct RunConfig {
  int g = 1;
  int n = 1;
  std::string command;
  std::string format = "human";
  int jobs = 4;
  std::uint64_t seed = 1;
  std::string out;
  int tietze = 0;
};

struct BadInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Outcome {
  std::string text;
  bool ok = true;
};

void need_points(const RunConfig& c) {
  if (c.n < 2) throw BadInput(c.command + " needs n >= 2");
}

bool structured(const RunConfig& c) {
  if (c.format == "algebra-text") throw BadInput("algebra-text is only available for present");
  return c.format == "structured";
}

Outcome cmd_present(const RunConfig& c) {
  auto P = full_presentation(c.g, c.n);
  return {dump(P, parse_format(c.format)), true};
}

Outcome cmd_verify(const RunConfig& c) {
  auto rep = verify_presentation(c.g, c.n, c.jobs);
  if (!structured(c)) return {rep.str(), rep.ok()};
  json j{{"g", c.g}, {"n", c.n}, {"ok", rep.ok()}, {"form_checked", rep.form_checked},
         {"form_failed", rep.form_failed}, {"quarantine", rep.quarantine}};
  j["families"] = json::array();
  for (auto& f : rep.families)
    j["families"].push_back({{"family", f.family},
                             {"emitted", f.emitted},
                             {"verified", f.verified},
                             {"failed", f.failed},
                             {"first_witness", f.first_witness}});
  return {j.dump(2) + "\n", rep.ok()};
}

Outcome cmd_subgroup_basis(const RunConfig& c) {
  need_points(c);
  auto b = check_subgroup_basis(c.g, c.n);
  if (!structured(c)) return {b.str(), b.ok()};
  json j{{"g", c.g},          {"n", c.n},
         {"rank_B", b.rank_B}, {"rank_push_basis", b.rank_push},
         {"expected", b.expected}, {"isomorphic", b.isomorphic},
         {"ok", b.ok()}};
  j["B"] = json::array();
  for (auto& w : b.B) j["B"].push_back(word_to_json(w));
  return {j.dump(2) + "\n", b.ok()};
}

Outcome cmd_extend(const RunConfig& c) {
  need_points(c);
  auto t = epsilon_table(c.g, c.n);
  auto run = run_extension(c.g, c.n, t.values());
  bool ok = run.diff.empty();
  if (!structured(c)) {
    std::ostringstream os;
    os << "(" << c.g << "," << c.n - 1 << ") -> (" << c.g << "," << c.n << "): " << run.central.relators.size()
       << " assembled relators, " << run.direct.relators.size() << " direct\n"
       << run.diff.str();
    for (auto& w : t.warnings) os << "warning: " << w << "\n";
    os << (ok ? "ok" : "FAILED") << "\n";
    return {os.str(), ok};
  }
  auto rel = [](const std::vector<Relator>& v) {
    json a = json::array();
    for (auto& r : v) a.push_back({{"family", r.family}, {"case", r.kase}, {"word", word_to_json(r.word)}});
    return a;
  };
  json j{{"g", c.g},
         {"n", c.n},
         {"ok", ok},
         {"only_assembled", rel(run.diff.only_first)},
         {"only_direct", rel(run.diff.only_second)},
         {"quarantined", run.diff.quarantined},
         {"warnings", t.warnings}};
  return {j.dump(2) + "\n", ok};
}

Outcome cmd_check_derivations(const RunConfig& c) {
  need_points(c);
  auto reps = replay_all(c.g, c.n, c.jobs);
  bool ok = true;
  for (auto& r : reps) ok = ok && r.ok();
  if (!structured(c)) {
    std::ostringstream os;
    os << "replaying over 1<=g<=" << c.g << ", 2<=n<=" << c.n << "\n";
    for (auto& r : reps) os << r.str();
    return {os.str(), ok};
  }
  json j{{"g", c.g}, {"n", c.n}, {"ok", ok}};
  j["derivations"] = json::array();
  for (auto& r : reps) {
    json failures = json::array();
    std::size_t good = 0;
    for (auto& inst : r.instances) {
      if (inst.ok()) {
        ++good;
        continue;
      }
      failures.push_back({{"g", inst.g},
                          {"n", inst.n},
                          {"case", inst.kase},
                          {"start_matches", inst.start_matches},
                          {"end_matches", inst.end_matches},
                          {"error", inst.verdict.error}});
    }
    j["derivations"].push_back({{"family", r.family},
                                {"branch", r.branch},
                                {"epsilon", r.epsilon},
                                {"instances", r.instances.size()},
                                {"verified", good},
                                {"failures", failures},
                                {"warnings", r.warnings}});
  }
  return {j.dump(2) + "\n", ok};
}

Outcome cmd_abelianize(const RunConfig& c) {
  auto P = full_presentation(c.g, c.n);
  auto A = abelianization(P);
  bool ok = true;
  std::string walk;
  if (c.tietze > 0) {
    auto W = random_tietze_walk(P, c.seed, c.tietze);
    auto B = abelianization(W.result);
    ok = B == A;
    walk = B.str();
  }
  if (!structured(c)) {
    std::string s = A.str() + "\n";
    if (c.tietze > 0)
      s += "after " + std::to_string(c.tietze) + " Tietze moves (seed " + std::to_string(c.seed) + "): " + walk +
           (ok ? "" : "  MISMATCH") + "\n";
    return {s, ok};
  }
  json t = json::array();
  for (auto& x : A.torsion) t.push_back(x.str());
  json j{{"g", c.g}, {"n", c.n}, {"torsion", t}, {"free_rank", A.free_rank}, {"ok", ok}};
  if (c.tietze > 0) j["tietze"] = {{"moves", c.tietze}, {"seed", c.seed}, {"invariants", walk}};
  return {j.dump(2) + "\n", ok};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Presentations of mapping class groups of non-orientable surfaces"};
  app.require_subcommand(1);
  RunConfig cfg;

  using Cmd = Outcome (*)(const RunConfig&);
  std::vector<std::pair<CLI::App*, Cmd>> cmds;
  auto add = [&](const char* name, const char* help, Cmd f) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--g", cfg.g, "number of crosscaps")->required();
    sub->add_option("--n", cfg.n, "number of boundary components")->required();
    sub->add_option("--format", cfg.format, "structured, algebra-text or human")
        ->check(CLI::IsMember({"structured", "algebra-text", "human"}));
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    sub->add_option("--out", cfg.out, "write the report to this file");
    cmds.push_back({sub, f});
    return sub;
  };
  add("present", "print the full presentation", cmd_present);
  add("verify", "check every relator in the mod-2 homology representation", cmd_verify);
  add("subgroup-basis", "Reidemeister-Schreier basis and its cross-check", cmd_subgroup_basis);
  add("extend", "run the (g,n-1) -> (g,n) extension and compare", cmd_extend);
  add("check-derivations", "replay the stored boundary-twist derivations", cmd_check_derivations);
  add("abelianize", "abelian invariants of the full presentation", cmd_abelianize)
      ->add_option("--tietze", cfg.tietze, "also check invariance under this many random Tietze moves");

  CLI11_PARSE(app, argc, argv);

  Outcome out;
  try {
    for (auto& [sub, f] : cmds)
      if (sub->parsed()) {
        cfg.command = sub->get_name();
        check_params(cfg.g, cfg.n);
        out = f(cfg);
      }
  } catch (const InvalidSurface& e) {
    std::cerr << "invalid surface: " << e.what() << "\n";
    return 2;
  } catch (const BadInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  if (cfg.out.empty()) {
    std::cout << out.text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return 3;
    }
    f << out.text;
  }
  return out.ok ? 0 : 1;
}
