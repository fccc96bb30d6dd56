#include "kfp/json_io.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace kfp {

namespace {

nlohmann::ordered_json vector_json(const Eigen::VectorXd& v) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (long i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

nlohmann::ordered_json point_list_json(const std::vector<Eigen::VectorXd>& pts) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& p : pts) arr.push_back(vector_json(p));
  return arr;
}

}  // namespace

nlohmann::ordered_json to_json(const Discretization& disc) {
  return {{"Nq", disc.nq}, {"Np", disc.np}, {"L", disc.box},
          {"bc", to_string(disc.bc)}, {"d", disc.d}};
}

nlohmann::ordered_json to_json(const AssumptionReport& rep) {
  nlohmann::ordered_json j;
  j["holds"] = rep.holds;
  j["critical_points"] = point_list_json(rep.critical_set.points);
  j["residuals"] = rep.critical_set.residuals;
  j["failures"] = point_list_json(rep.failures);
  if (rep.epsilon0_infinite)
    j["epsilon0"] = nullptr;
  else
    j["epsilon0"] = rep.epsilon0;
  j["epsilon0_infinite"] = rep.epsilon0_infinite;
  j["epsilon1"] = rep.epsilon1;
  j["epsilon2"] = rep.epsilon2;
  j["epsilon3"] = rep.epsilon3;
  j["resolution"] = rep.resolution;
  return j;
}

nlohmann::ordered_json to_json(const EstimateReport& rep) {
  nlohmann::ordered_json j;
  j["inequality"] = rep.inequality;
  if (rep.inequality == "main")
    j["C_star"] = rep.constant;
  else
    j["c_star"] = rep.constant;
  nlohmann::ordered_json terms;
  for (const auto& [key, val] : rep.per_term) terms[key] = val;
  j["per_term"] = terms;
  j["disc"] = to_json(rep.disc);
  j["potential"] = rep.potential;
  j["seed"] = rep.seed;
  j["weight_scale"] = rep.weight_scale;
  j["at_lower_endpoint"] = rep.at_lower_endpoint;
  j["cert_value_below"] = rep.cert_value_below;
  j["cert_value_above"] = rep.cert_value_above;
  j["form_scale"] = rep.form_scale;
  j["runtime_ms"] = rep.runtime_ms;
  return j;
}

nlohmann::ordered_json to_json(const CompactnessReport& rep) {
  nlohmann::ordered_json j;
  j["delta"] = rep.delta;
  j["convention"] = to_string(rep.convention);
  j["exponent"] = rep.exponent;
  j["m_delta"] = rep.m_delta;
  j["m_delta_argmin"] = vector_json(rep.m_delta_argmin);
  j["worst_ratio"] = rep.worst_ratio;
  j["lambdas"] = rep.lambdas;
  j["ray_samples"] = rep.ray_samples;
  j["violations"] = point_list_json(rep.violations);
  return j;
}

nlohmann::ordered_json to_json(const LocalizationTrace& trace) {
  nlohmann::ordered_json j;
  j["j"] = trace.j;
  j["h"] = trace.h;
  j["H"] = trace.big_h;
  j["nu"] = trace.nu;
  j["rho"] = trace.rho;
  j["commutator_ratio"] = trace.commutator_ratio;
  j["taylor_ratio"] = trace.taylor_ratio;
  j["case1_count"] = trace.case1_count;
  j["case2_count"] = trace.case2_count;
  j["ambiguous_count"] = trace.ambiguous_count;
  nlohmann::ordered_json patches = nlohmann::ordered_json::array();
  for (const auto& p : trace.patches) {
    patches.push_back({{"center", vector_json(p.center)},
                       {"case", p.case_id},
                       {"ambiguous", p.ambiguous},
                       {"critical_distance", p.critical_distance},
                       {"ims_slack", p.ims_slack},
                       {"split_slack", p.split_slack},
                       {"taylor_ratio", p.taylor_ratio}});
  }
  j["patches"] = patches;
  return j;
}

nlohmann::ordered_json to_json(const PotentialConstants& pc) {
  return {{"A_V", pc.a_v},
          {"B_V", pc.b_v},
          {"tr_plus", pc.tr_plus},
          {"tr_minus", pc.tr_minus},
          {"min_gradient", pc.min_gradient},
          {"hypothesis_nondegenerate", pc.hypothesis_nondegenerate}};
}

nlohmann::ordered_json to_json(const InfInequalityReport& rep) {
  nlohmann::ordered_json j;
  j["x"] = rep.x;
  j["inf_value"] = rep.inf_value;
  j["ratio"] = rep.ratio;
  j["sup_ratio"] = rep.sup_ratio;
  return j;
}

void emit_report(const nlohmann::ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write to '" + out_path + "' failed");
}

}  // namespace kfp
