#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcgpres/catalog.hpp"
#include "mcgpres/delta.hpp"
#include "mcgpres/extension.hpp"
#include "mcgpres/homology.hpp"
#include "mcgpres/serialize.hpp"
#include "mcgpres/subgroup.hpp"

namespace py = pybind11;
using namespace mcgpres;

namespace {

py::list relator_list(const std::vector<Relator>& v) {
  py::list out;
  for (auto& r : v) out.append(py::make_tuple(r.family, r.kase, r.word.str()));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Presentations of mapping class groups of non-orientable surfaces";

  py::register_exception<InvalidSurface>(m, "InvalidSurface", PyExc_ValueError);

  m.def("full_presentation",
        [](int g, int n, const std::string& format) { return dump(full_presentation(g, n), parse_format(format)); },
        py::arg("g"), py::arg("n"), py::arg("format") = "algebra-text");

  m.def("generator_count", [](int g, int n) {
    check_params(g, n);
    return generator_count(g, n);
  });

  m.def("reduce_word", [](const std::string& w) { return parse_word(w).str(); });

  m.def(
      "verify",
      [](int g, int n, int jobs) {
        VerifyReport rep;
        {
          py::gil_scoped_release nogil;
          rep = verify_presentation(g, n, jobs);
        }
        py::list fams;
        for (auto& f : rep.families) {
          py::dict d;
          d["family"] = f.family;
          d["emitted"] = f.emitted;
          d["verified"] = f.verified;
          d["failed"] = f.failed;
          d["first_witness"] = f.first_witness;
          fams.append(d);
        }
        py::dict out;
        out["ok"] = rep.ok();
        out["families"] = fams;
        out["quarantine"] = rep.quarantine;
        out["form_checked"] = rep.form_checked;
        out["form_failed"] = rep.form_failed;
        return out;
      },
      py::arg("g"), py::arg("n"), py::arg("jobs") = 1);

  m.def("abelianize", [](int g, int n) {
    auto A = abelianization(full_presentation(g, n));
    std::vector<long long> t;
    for (auto& x : A.torsion) t.push_back(x.convert_to<long long>());
    return py::make_tuple(t, A.free_rank);
  });

  m.def("subgroup_basis", [](int g, int n) {
    check_params(g, n);
    auto c = check_subgroup_basis(g, n);
    std::vector<std::string> B;
    for (auto& w : c.B) B.push_back(w.str());
    py::dict d;
    d["B"] = B;
    d["rank_B"] = c.rank_B;
    d["rank_push_basis"] = c.rank_push;
    d["expected"] = c.expected;
    d["isomorphic"] = c.isomorphic;
    d["ok"] = c.ok();
    return d;
  });

  m.def("extend", [](int g, int n) {
    auto run = run_extension(g, n, epsilon_table(g, n).values());
    py::dict d;
    d["ok"] = run.diff.empty();
    d["only_assembled"] = relator_list(run.diff.only_first);
    d["only_direct"] = relator_list(run.diff.only_second);
    d["quarantined"] = run.diff.quarantined;
    return d;
  });

  m.def(
      "check_derivations",
      [](int gmax, int nmax, int jobs) {
        std::vector<DerivationReport> reps;
        {
          py::gil_scoped_release nogil;
          reps = replay_all(gmax, nmax, jobs);
        }
        py::list out;
        for (auto& r : reps) {
          py::dict d;
          d["family"] = r.family;
          d["branch"] = r.branch;
          d["epsilon"] = r.epsilon;
          d["instances"] = r.instances.size();
          d["ok"] = r.ok();
          d["warnings"] = r.warnings;
          out.append(d);
        }
        return out;
      },
      py::arg("gmax"), py::arg("nmax"), py::arg("jobs") = 1);

  m.def("epsilon_table", [](int g, int n) {
    auto t = epsilon_table(g, n);
    py::dict d;
    for (auto& [k, e] : t.entries) d[py::make_tuple(k.first, k.second)] = py::make_tuple(e.value, e.source);
    return py::make_tuple(d, t.warnings);
  });
}
