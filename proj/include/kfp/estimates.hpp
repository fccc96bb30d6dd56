#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "kfp/assumption.hpp"
#include "kfp/discretization.hpp"
#include "kfp/partition.hpp"
#include "kfp/potential.hpp"

namespace kfp {

// Outcome of one inequality verification on a fixed discretization. The
// measured constant is a property of the discretized forms, never a
// certificate for the continuum operator; disc metadata travels with it.
struct EstimateReport {
  std::string inequality;
  double constant = 0.0;            // C* (smallest admissible) or c* (largest)
  Eigen::VectorXd certificate;      // state witnessing the extremal ratio
  std::map<std::string, double> per_term;  // weighted-norm breakdown at the certificate
  Discretization disc;
  std::string potential;
  unsigned seed = 0;
  long runtime_ms = 0;
  bool at_lower_endpoint = false;   // C* equals the search floor (trivial form)
  double weight_scale = 1.0;        // common factor applied to the four weights
  double cert_value_below = 0.0;    // quadratic form at the certificate, just below C*
  double cert_value_above = 0.0;    // same at C = 1.001 C*
  double form_scale = 1.0;          // reference magnitude for PSD tolerances
};

// Largest c with ||Ku||^2 + A_V ||u||^2 >= c (||O_p u||^2 + ||X_V u||^2 +
// ||<grad V>^{2/3} u||^2 + ||<D_q>^{2/3} u||^2) on the discretization, via a
// generalized symmetric eigensolve. Degree <= 2 potentials.
EstimateReport verify_quadratic_remainder(const Polynomial& v, const Discretization& disc);

// sigma_min(K_V)^2 / B_V, the measured constant of ||K_V u||^2 >= c B_V ||u||^2.
// Throws HypothesisViolated when tr_minus + min|grad V| vanishes.
EstimateReport verify_quadratic_lower(const Polynomial& v, const Discretization& disc);

struct GlobalEstimateParams {
  double c_max = 1e6;
  double rel_tol = 1e-3;      // relative gap for the bisection
  unsigned seed = 20240817;   // recorded; search itself is deterministic
  double weight_scale = 1.0;  // 0 drops the weights entirely
  HessianNorm convention = HessianNorm::OpNorm;
};

// Smallest C in [1, c_max] such that
//   K^T K + C I - (1/C) sum_i Lambda_i^2  >=  -1e-9 * scale
// with Lambda the four log-corrected weights. Monotone in C, so a doubling
// scan plus bisection brackets C*; throws SearchNotFound when c_max fails.
EstimateReport verify_global_estimate(const Polynomial& v, const Discretization& disc,
                                      const GlobalEstimateParams& params = {});

struct InfInequalityReport {
  std::vector<double> x;
  std::vector<double> inf_value;  // inf_{t>=2} x/log t + t
  std::vector<double> ratio;      // L(x) / inf
  double sup_ratio = 0.0;         // empirical best constant c
};

InfInequalityReport verify_inf_inequality(const std::vector<double>& xs);

// One patch of the fine partition at dyadic level j, with every intermediate
// quantity of the localization argument evaluated on a test state.
struct PatchTrace {
  Eigen::VectorXd center;
  int case_id = 2;            // 1 = near the critical cone, 2 = gradient-dominated
  bool ambiguous = false;     // straddles the epsilon1 boundary; assigned Case 1
  double critical_distance = 0.0;
  double ims_slack = 0.0;     // ||K_j w||^2 - 3/4 sum_k ||K_j w_k||^2 + err ||w||^2
  double split_slack = 0.0;   // ||K_j w||^2 - 1/2 ||K_j~ w||^2 + ||h^{-1/2} dgrad dp w||^2
  double taylor_ratio = 0.0;  // sup |grad V - grad surrogate| / rho^order on the patch edge
};

struct LocalizationTrace {
  int j = 0;
  double h = 0.0, big_h = 0.0, nu = 0.0, rho = 0.0;
  double commutator_ratio = 0.0, taylor_ratio = 0.0;  // error-domination ratios
  int case1_count = 0, case2_count = 0, ambiguous_count = 0;
  std::vector<PatchTrace> patches;
};

// Walks the localization argument at level j >= 1: builds the fine partition
// at scale rho = |ln h| h^nu, classifies every patch against the epsilon1
// neighborhood of the critical cone, and evaluates the per-patch estimates
// (d = 1 grids run the full numerics; d = 2 classifies only).
LocalizationTrace localization_pipeline_trace(const HomogeneousPotential& v, int j,
                                              const Discretization& disc,
                                              const AssumptionReport& assumption);

}  // namespace kfp
