#include <chrono>
#include <iostream>
#include <sstream>

#include "mcgpres/catalog.hpp"
#include "mcgpres/delta.hpp"
#include "mcgpres/extension.hpp"
#include "mcgpres/homology.hpp"
#include "mcgpres/serialize.hpp"
#include "mcgpres/subgroup.hpp"

using namespace mcgpres;

namespace {

struct Line {
  bool ok = true;
  std::string detail;
  std::vector<std::string> notes;
};

Line homology_grid(bool form_only) {
  Line L;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t relators = 0, forms = 0;
  for (int g = 1; g <= 6; ++g)
    for (int n = 1; n <= 4; ++n) {
      auto rep = verify_presentation(g, n, 4);
      forms += rep.form_checked;
      if (rep.form_failed) {
        L.ok = false;
        L.notes.push_back("form check failed at (" + std::to_string(g) + "," + std::to_string(n) + ")");
      }
      if (form_only) continue;
      for (auto& f : rep.families) {
        relators += f.emitted;
        if (f.failed) {
          L.ok = false;
          L.notes.push_back("(" + std::to_string(g) + "," + std::to_string(n) + ") " + f.family + ": " +
                            f.first_witness);
        }
      }
      for (auto& q : rep.quarantine)
        L.notes.push_back("(" + std::to_string(g) + "," + std::to_string(n) + ") quarantined " + q);
    }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream os;
  if (form_only) {
    os << forms << " generator matrices preserve the form and are invertible";
  } else {
    os << relators << " relators over 1<=g<=6, 1<=n<=4 in " << secs << "s at 4 jobs";
    if (secs >= 60) {
      L.ok = false;
      os << " (over the 60s budget)";
    }
  }
  L.detail = os.str();
  return L;
}

Line schreier() {
  Line L;
  int count = 0;
  for (int g = 1; g <= 6; ++g)
    for (int n = 2; n <= 5; ++n) {
      auto c = check_subgroup_basis(g, n);
      ++count;
      if (!c.ok()) {
        L.ok = false;
        L.notes.push_back("(" + std::to_string(g) + "," + std::to_string(n) + ") rank " +
                          std::to_string(c.rank_B) + " expected " + std::to_string(c.expected));
      }
    }
  L.detail = std::to_string(count) + " grid points, fold(B) isomorphic to fold(push basis), rank 2g+2n-5";
  return L;
}

Line abelian() {
  Line L;
  auto A21 = abelianization(full_presentation(2, 1));
  auto A11 = abelianization(full_presentation(1, 1));
  bool a = A21.torsion == std::vector<BigInt>{2} && A21.free_rank == 1;
  bool b = A11.torsion.empty() && A11.free_rank == 0;
  int same = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto P = random_presentation(seed, 3, 3, 6);
    if (abelianization(random_tietze_walk(P, seed, 12).result) == abelianization(P))
      ++same;
    else
      L.notes.push_back("Tietze walk changed the invariants at seed " + std::to_string(seed));
  }
  L.ok = a && b && same == 50;
  L.detail = "(2,1): " + A21.str() + "; (1,1): " + A11.str() + "; " + std::to_string(same) +
             "/50 seeded Tietze walks keep the invariants";
  return L;
}

Line extension() {
  Line L;
  std::size_t quarantined = 0;
  for (int g = 1; g <= 4; ++g)
    for (int n = 2; n <= 4; ++n) {
      auto run = run_extension(g, n, epsilon_table(g, n).values());
      quarantined += run.diff.quarantined.size();
      for (auto& q : run.diff.quarantined)
        L.notes.push_back("(" + std::to_string(g) + "," + std::to_string(n) + ") quarantined " + q);
      if (!run.diff.empty()) {
        L.ok = false;
        L.notes.push_back("(" + std::to_string(g) + "," + std::to_string(n) + ") " + run.diff.str());
      }
    }
  L.detail = "1<=g<=4, 2<=n<=4 match the direct presentations, " + std::to_string(quarantined) +
             " quarantined relators set aside";
  return L;
}

Line derivations() {
  Line L;
  auto reps = replay_all(6, 5, 4);
  std::map<std::pair<std::string, std::string>, long> want{
      {{"D1e'", "m=i"}, -2},  {{"D2c'", "i=1"}, 0},    {{"D2c'", "i=2"}, 0},
      {{"D2c'", "i=3"}, 0},   {{"D2c'", "i=4"}, 0},    {{"D1d'", "m=i-1"}, -1},
      {{"D1g'", "i=1"}, 0},   {{"D2d'", "m=i-1"}, 0},  {{"D2g'", "i=1"}, 0}};
  std::size_t inst = 0, facts = 0;
  for (auto& r : reps) {
    inst += r.instances.size();
    for (auto& i : r.instances) facts += i.verdict.facts.size();
    if (!r.ok() || r.instances.empty()) {
      L.ok = false;
      L.notes.push_back(r.str());
    }
    auto it = want.find({r.family, r.branch});
    if (it != want.end()) {
      if (it->second != r.epsilon) {
        L.ok = false;
        L.notes.push_back(r.family + " " + r.branch + " gives " + std::to_string(r.epsilon));
      }
      want.erase(it);
    }
    for (auto& w : r.warnings) L.notes.push_back("warning " + r.family + " " + r.branch + ": " + w);
  }
  for (auto& [k, v] : want) {
    L.ok = false;
    L.notes.push_back("no derivation stored for " + k.first + " " + k.second);
  }
  L.detail = std::to_string(reps.size()) + " derivations, " + std::to_string(inst) + " instances, " +
             std::to_string(facts) + " fact checks";
  return L;
}

Line schemas() {
  Line L;
  auto c = [](const std::string& s) { return SignedCurve{s, '+', 1}; };
  struct Case {
    const char* what;
    int g, n;
    SchemaData d;
  };
  std::vector<Case> lanterns{
      {"lantern around alpha1, alpha3, hole 1", 4, 3,
       {Schema::lantern, {c("beta"), c("alpha3;1"), c("alpha1;1")},
        {c("alpha1"), c("alpha3"), c("delta1"), c("epsilon1")}, ""}},
      {"lantern around alpha1, holes 1 and 2", 3, 4,
       {Schema::lantern, {c("alpha1;1"), c("sigma1,2"), c("alpha1;2")},
        {c("alpha1"), c("delta1"), c("delta2"), c("eta1,2")}, ""}},
      {"lantern around holes 1, 2, 3", 2, 5,
       {Schema::lantern, {c("sigma1,2"), c("sigma2,3"), c("sigma1,3")},
        {c("delta1"), c("delta2"), c("delta3"), c("gamma1,2,3")}, ""}},
  };
  std::vector<Case> chains{
      {"2-chain alpha1, alpha2", 3, 1, {Schema::chain, {c("alpha1"), c("alpha2")}, {c("kappa1")}, ""}},
      {"2-chain alpha2, alpha3", 5, 2, {Schema::chain, {c("alpha2"), c("alpha3")}, {c("kappa2")}, ""}},
      {"3-chain alpha1, alpha2, alpha3", 4, 2,
       {Schema::chain, {c("alpha1"), c("alpha2"), c("alpha3")}, {c("beta"), c("beta")}, ""}},
  };
  std::vector<Case> involutions{
      {"twist involution alpha1", 3, 2, {Schema::twist_involution, {c("alpha1")}, {}, ""}},
      {"twist involution alpha2;1", 3, 2, {Schema::twist_involution, {c("alpha2;1")}, {}, ""}},
      {"slide involution mu1, alpha1", 3, 2, {Schema::slide_involution, {c("alpha1")}, {}, "mu1"}},
  };
  int counts[3] = {0, 0, 0};
  int k = 0;
  for (auto* group : {&lanterns, &chains, &involutions}) {
    for (auto& cs : *group) {
      Representation R(HomologySpace(cs.g, cs.n));
      if (R.image(schema_instance(cs.d)).is_identity())
        ++counts[k];
      else {
        L.ok = false;
        L.notes.push_back(std::string(cs.what) + " does not verify");
      }
    }
    ++k;
  }
  // a lantern with a wrong boundary curve must not verify
  auto broken = lanterns[0].d;
  broken.boundary[1] = c("alpha2");
  Representation R(HomologySpace(4, 3));
  bool control = !R.image(schema_instance(broken)).is_identity();
  if (!control) {
    L.ok = false;
    L.notes.push_back("negative control verified");
  }
  L.ok = L.ok && counts[0] >= 3 && counts[1] >= 3;
  L.detail = std::to_string(counts[0]) + " lanterns, " + std::to_string(counts[1]) + " chains, " +
             std::to_string(counts[2]) + " involution relators verify; altered lantern rejected";
  return L;
}

Line serialization() {
  Line L;
  int count = 0;
  for (int g = 1; g <= 6; ++g)
    for (int n = 0; n <= 4; ++n)
      for (auto f : {Format::structured, Format::algebra_text}) {
        auto text = dump(full_presentation(g, n), f);
        ++count;
        if (dump(load(text, f), f) != text) {
          L.ok = false;
          L.notes.push_back("(" + std::to_string(g) + "," + std::to_string(n) + ") " +
                            (f == Format::structured ? "structured" : "algebra-text"));
        }
      }
  L.detail = std::to_string(count) + " dumps over 1<=g<=6, 0<=n<=4 in both formats are byte-identical";
  return L;
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, Line (*)()>> crit{
      {"homology verification", [] { return homology_grid(false); }},
      {"form preservation", [] { return homology_grid(true); }},
      {"Reidemeister-Schreier", schreier},
      {"abelianization", abelian},
      {"extension round trip", extension},
      {"derivation replay", derivations},
      {"schema instances", schemas},
      {"serialization round trip", serialization},
  };
  bool all = true;
  int k = 1;
  for (auto& [name, f] : crit) {
    Line L;
    try {
      L = f();
    } catch (const std::exception& e) {
      L.ok = false;
      L.detail = std::string("error: ") + e.what();
    }
    all = all && L.ok;
    std::cout << "criterion " << k++ << " (" << name << "): " << (L.ok ? "PASS" : "FAIL") << ": " << L.detail
              << "\n";
    for (auto& n : L.notes) std::cout << "    " << n << "\n";
  }
  return all ? 0 : 1;
}
