#include <pybind11/pybind11.h>

#include <string>

#include "kfp/assumption.hpp"
#include "kfp/discretization.hpp"
#include "kfp/estimates.hpp"
#include "kfp/json_io.hpp"
#include "kfp/polynomial.hpp"
#include "kfp/potential.hpp"

namespace py = pybind11;

namespace {

std::string check_json(const std::string& potential_path, double resolution) {
  kfp::HomogeneousPotential v = kfp::HomogeneousPotential::load(potential_path);
  kfp::SearchParams params;
  params.resolution = resolution;
  return kfp::to_json(kfp::check_assumption(v, params)).dump(2);
}

std::string verify_json(const std::string& potential_path, int nq, int np, double box,
                        const std::string& bc, double c_max, unsigned seed) {
  kfp::HomogeneousPotential v = kfp::HomogeneousPotential::load(potential_path);
  kfp::SearchParams search;
  kfp::AssumptionReport assumption = kfp::check_assumption(v, search);
  if (!assumption.holds)
    throw std::runtime_error("assumption fails; no admissible constant to search for");
  kfp::Discretization disc =
      kfp::Discretization::make(v.dim(), nq, np, box, kfp::boundary_from_string(bc));
  kfp::GlobalEstimateParams params;
  params.c_max = c_max;
  params.seed = seed;
  return kfp::to_json(kfp::verify_global_estimate(v.poly(), disc, params)).dump(2);
}

std::string constants_json(const std::string& potential_path) {
  kfp::Polynomial v = kfp::Polynomial::load(potential_path);
  nlohmann::ordered_json j;
  j["potential"] = v.to_string();
  if (v.total_degree() <= 2) j["potential_constants"] = kfp::to_json(kfp::potential_constants(v));
  auto hom = v.homogeneous_degree();
  if (hom && *hom >= 2) {
    kfp::SearchParams search;
    j["assumption"] =
        kfp::to_json(kfp::check_assumption(kfp::HomogeneousPotential::from(v), search));
  }
  return j.dump(2);
}

double log_weight_py(double s) { return kfp::log_weight(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kinetic Fokker-Planck operator toolkit (JSON-string interface)";
  m.def("check", &check_json, py::arg("potential_path"), py::arg("resolution") = 1e-3,
        "Nondegeneracy check; returns the report as a JSON string.");
  m.def("verify", &verify_json, py::arg("potential_path"), py::arg("nq") = 64,
        py::arg("np") = 32, py::arg("box") = 8.0, py::arg("bc") = "periodic",
        py::arg("c_max") = 1e6, py::arg("seed") = 20240817u,
        "Smallest admissible constant for the weighted lower bound, as JSON.");
  m.def("constants", &constants_json, py::arg("potential_path"),
        "Pointwise constants of a potential, as JSON.");
  m.def("log_weight", &log_weight_py, py::arg("s"),
        "The log-corrected weight profile (s+1)/log(s+1), s >= 1.");
}
