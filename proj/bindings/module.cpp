#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "fillinglab/constants_audit.hpp"
#include "fillinglab/projective.hpp"
#include "fillinglab/projective_plane.hpp"
#include "fillinglab/scenarios.hpp"
#include "fillinglab/tree_boundary.hpp"

namespace py = pybind11;
using namespace fillinglab;

namespace {

// Exact values cross the boundary as canonical strings; json stays text.
std::string run_scenario_json(const std::string& config_text) {
  Json j = Json::parse(config_text, nullptr, false);
  if (j.is_discarded()) throw config_error("config is not valid JSON");
  return report_to_string(run_scenario(ScenarioConfig::from_json(j)));
}

py::dict recheck_json(const std::string& report_text) {
  RecheckResult res = recheck_certificate(report_from_string(report_text));
  py::dict out;
  out["ok"] = res.ok;
  out["failures"] = res.failures;
  return out;
}

int exit_code_json(const std::string& report_text) {
  return exit_code_for_report(report_from_string(report_text));
}

py::dict constants_dict(int n, const std::string& epsilon) {
  ConstantsAudit audit = verify_proof_constants(n, rat_from_string(epsilon));
  py::dict out;
  out["n"] = audit.n;
  out["epsilon"] = rat_to_string(audit.epsilon);
  out["in_range"] = audit.epsilon_in_range;
  out["all_hold"] = audit.all_hold;
  py::list checks;
  for (const InequalityCheck& c : audit.checks) {
    py::dict d;
    d["name"] = c.name;
    d["lhs"] = c.lhs;
    d["relation"] = c.relation;
    d["rhs"] = c.rhs;
    d["applicable"] = c.applicable;
    d["holds"] = c.holds;
    checks.append(d);
  }
  out["checks"] = checks;
  return out;
}

std::vector<std::string> act_on_cylinders(int rank, const std::string& word,
                                          const std::vector<std::string>& prefixes) {
  std::vector<ReducedWord> ws;
  for (const std::string& p : prefixes) ws.push_back(ReducedWord::parse(p, rank));
  ClopenSet image = act_on_clopen(ReducedWord::parse(word, rank),
                                  ClopenSet::from_prefixes(std::move(ws), rank));
  std::vector<std::string> out;
  for (const ReducedWord& p : image.prefixes()) out.push_back(p.str());
  return out;
}

py::dict cover_check_py(int rank,
                        const std::vector<std::vector<std::string>>& sets) {
  std::vector<ClopenSet> cs;
  for (const auto& prefixes : sets) {
    std::vector<ReducedWord> ws;
    for (const std::string& p : prefixes) ws.push_back(ReducedWord::parse(p, rank));
    cs.push_back(ClopenSet::from_prefixes(std::move(ws), rank));
  }
  CoverResult res = cover_check(rank, cs);
  py::dict out;
  out["covered"] = res.covered;
  out["depth"] = res.depth;
  out["missed"] = res.missed ? py::cast(res.missed->str()) : py::none();
  return out;
}

py::dict two_filling_py(int rank, const std::vector<std::string>& u,
                        const std::vector<std::string>& v, int radius) {
  auto parse_set = [&](const std::vector<std::string>& prefixes) {
    std::vector<ReducedWord> ws;
    for (const std::string& p : prefixes) ws.push_back(ReducedWord::parse(p, rank));
    return ClopenSet::from_prefixes(std::move(ws), rank);
  };
  TreeWitness w = two_filling_witness(parse_set(u), parse_set(v), radius);
  py::dict out;
  out["found"] = w.found;
  out["certified"] = w.certified;
  if (w.found) {
    out["t1"] = w.t1.str();
    out["t2"] = w.t2.str();
    out["cover_depth"] = w.cover_depth;
  } else {
    out["failure"] = w.failure;
  }
  return out;
}

py::dict plane_summary(int q) {
  Plane plane = Plane::build(q);
  py::dict out;
  out["q"] = plane.q();
  out["points"] = plane.size();
  out["lines"] = plane.size();
  out["flags"] = plane.flag_count();
  out["apartments"] = all_apartments(plane).size();
  return out;
}

bool opposite_py(int q, const std::string& f1, const std::string& f2) {
  Plane plane = Plane::build(q);
  return opposite(plane, parse_flag(plane, f1), parse_flag(plane, f2));
}

py::dict min_cover_py(int q) {
  Plane plane = Plane::build(q);
  MinCoverResult res = min_opposition_cover(plane);
  py::dict out;
  out["m"] = res.m;
  out["lower_bound"] = res.lower_bound;
  py::list chambers;
  for (const Flag& f : res.chambers) chambers.append(plane.flag_str(f));
  out["chambers"] = chambers;
  out["subsets_checked"] = res.subsets_checked;
  return out;
}

unsigned long contraction_exponent_py(int n, long k, const std::string& eps) {
  return contraction_exponent(ProjectiveSystem::build(n, k),
                              rat_from_string(eps));
}

std::string lambda_plus_py(int n, long k) {
  return ProjectiveSystem::build(n, k).lambda_plus().str();
}

std::string r_constant_py(int n, long k) {
  return ProjectiveSystem::build(n, k).R().str();
}

int assign_region_py(int n, long k, const std::vector<std::string>& coords) {
  std::vector<Rational> c;
  for (const std::string& s : coords) c.push_back(rat_from_string(s));
  return ProjectiveSystem::build(n, k).assign_region(
      ProjectivePoint::from_rationals(c));
}

}  // namespace

PYBIND11_MODULE(_fillinglab, m) {
  m.doc() = "exact filling witnesses and certificate rechecks";
  m.attr("__version__") = "0.1.0";

  m.def("run_scenario_json", &run_scenario_json, py::arg("config"),
        "run one scenario from a JSON config string; returns the report JSON");
  m.def("recheck_json", &recheck_json, py::arg("report"),
        "independently re-verify a report; returns {ok, failures}");
  m.def("exit_code_json", &exit_code_json, py::arg("report"),
        "exit code a CLI run of this report would use");

  m.def("contraction_exponent", &contraction_exponent_py, py::arg("n"),
        py::arg("k"), py::arg("epsilon"),
        "least m with lambda_+^m > R/epsilon");
  m.def("lambda_plus", &lambda_plus_py, py::arg("n"), py::arg("k"),
        "expanding eigenvalue as an exact string");
  m.def("r_constant", &r_constant_py, py::arg("n"), py::arg("k"),
        "ratio bound R as an exact string");
  m.def("assign_region", &assign_region_py, py::arg("n"), py::arg("k"),
        py::arg("coords"), "index j with the point in K_j");

  m.def("act_on_cylinders", &act_on_cylinders, py::arg("rank"), py::arg("word"),
        py::arg("prefixes"), "prefixes of g S for a clopen S");
  m.def("cover_check", &cover_check_py, py::arg("rank"), py::arg("sets"),
        "exact boundary cover decision for unions of cylinders");
  m.def("two_filling", &two_filling_py, py::arg("rank"), py::arg("u"),
        py::arg("v"), py::arg("radius") = 8,
        "translates t1, t2 with t1 U and t2 V covering the boundary");

  m.def("plane_summary", &plane_summary, py::arg("q"),
        "census of PG(2,q): points, lines, flags, apartments");
  m.def("opposite", &opposite_py, py::arg("q"), py::arg("flag1"),
        py::arg("flag2"), "opposition of two flags given as (p)[l] strings");
  m.def("min_opposition_cover", &min_cover_py, py::arg("q"),
        "smallest chamber set whose opposition sets cover all flags");

  m.def("verify_constants", &constants_dict, py::arg("n"), py::arg("epsilon"),
        "exact audit of the constant chain at one epsilon");

  py::register_exception<config_error>(m, "ConfigError");
  py::register_exception<report_parse_error>(m, "ReportParseError");
}
