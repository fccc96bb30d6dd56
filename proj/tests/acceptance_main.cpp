// Acceptance harness: one line per criterion, nonzero exit when any fails.
// Each criterion re-derives its expected values from scratch so a regression
// in any layer (polynomials, partitions, operators, estimates) surfaces here.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "kfp/assumption.hpp"
#include "kfp/discretization.hpp"
#include "kfp/estimates.hpp"
#include "kfp/ims.hpp"
#include "kfp/operators.hpp"
#include "kfp/partition.hpp"
#include "kfp/polynomial.hpp"
#include "kfp/states.hpp"

using namespace kfp;

namespace {

std::string data_path(const std::string& name) { return std::string(KFP_DATA_DIR) + "/" + name; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

bool g_all_ok = true;

void criterion(int n, const std::string& what, const std::function<Outcome()>& body) {
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  std::printf("AC%d %s — %s (%s)\n", n, out.ok ? "PASS" : "FAIL", what.c_str(),
              out.detail.c_str());
  std::fflush(stdout);
  if (!out.ok) g_all_ok = false;
}

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

Outcome ac1_oscillator() {
  auto t0 = std::chrono::steady_clock::now();
  auto disc = Discretization::make(1, 4, 32, 8.0);
  Eigen::VectorXcd eigs = dense_spectrum(assemble_op(disc).mat);
  double max_err = 0.0;
  for (int n = 0; n < 16; ++n)
    max_err = std::max(max_err, std::abs(eigs(4 * n).real() - (n + 0.5)));
  double dt = seconds_since(t0);
  bool ok = max_err < 1e-10 && dt < 1.0;
  return {ok, fmt("max |eig - (n+1/2)| = %.2e over n < 16, %.2f s", max_err, dt)};
}

Outcome ac2_accretivity() {
  auto t0 = std::chrono::steady_clock::now();
  auto disc = Discretization::make(1, 64, 16, 8.0, Boundary::Periodic);
  Polynomial v = Polynomial::load(data_path("q4_1d.pot"));
  auto kv = assemble_kv(v, disc);
  auto op = assemble_op(disc);
  double worst = 0.0;
  for (const auto& u : random_interior_states(disc, 100, 4242)) {
    double gap = std::abs(u.dot(kv.mat * u) - u.dot(op.mat * u)) / u.squaredNorm();
    worst = std::max(worst, gap);
  }
  double dt = seconds_since(t0);
  bool ok = worst < 1e-10 && dt < 5.0;
  return {ok, fmt("max |u^T K u - u^T Op u| / ||u||^2 = %.2e over 100 states, %.2f s",
                  worst, dt)};
}

Outcome ac3_partition() {
  DyadicPartition dyadic;
  double max_err = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Eigen::VectorXd q(1);
    q(0) = 6.0 * i / 9999.0;
    max_err = std::max(max_err, std::abs(dyadic.sum_squares(q) - 1.0));
  }

  auto disc = Discretization::make(1, 96, 12, 17.0 / 12.0);
  auto kv = assemble_kv(Polynomial::load(data_path("q4_1d.pot")), disc);
  double worst_res = 0.0;
  for (const auto& u : random_smooth_states(disc, 5, 2024))
    worst_res = std::max(worst_res, ims_residual(kv, dyadic, u).residual);

  bool ok = max_err < 1e-10 && worst_res < 1e-6;
  return {ok, fmt("sum-of-squares err %.2e over 1e4 points; localization residual %.2e",
                  max_err, worst_res)};
}

Outcome ac4_scaling() {
  auto v = HomogeneousPotential::load(data_path("q4_1d.pot"));
  double worst = 0.0;
  for (int j = 1; j <= 3; ++j) {
    double s = std::ldexp(1.0, j);
    auto disc = Discretization::make(1, 64, 8, 3.0 * s);
    Eigen::VectorXd u = mode_state(disc, q_bump_values(disc, 1.5 * s, 0.5 * s), 2);
    worst = std::max(worst, scaled_norm_check(v, j, u, disc));
  }
  bool ok = worst < 1e-8;
  return {ok, fmt("max relative norm mismatch %.2e over levels 1..3", worst)};
}

Outcome ac5_assumption_checker() {
  auto t0 = std::chrono::steady_clock::now();
  SearchParams params;  // resolution 1e-3
  auto good = HomogeneousPotential::load(data_path("abstract_n1.pot"));
  AssumptionReport rep = check_assumption(good, params);

  bool pts_ok = rep.critical_set.points.size() == 2;
  double worst_pt = 1.0;
  if (pts_ok) {
    worst_pt = 0.0;
    for (const auto& p : rep.critical_set.points) {
      Eigen::Vector2d up(0.0, p(1) > 0 ? 1.0 : -1.0);
      worst_pt = std::max(worst_pt, (p - up).norm());
    }
    pts_ok = worst_pt < 1e-8;
  }
  bool eps_ok = rep.holds && std::abs(rep.epsilon0 - 2.0) < 1e-6;

  auto bad = HomogeneousPotential::load(data_path("q1_fourth.pot"));
  AssumptionReport rep_bad = check_assumption(bad, params);
  double dt = seconds_since(t0);
  bool ok = pts_ok && eps_ok && !rep_bad.holds && dt < 30.0;
  return {ok, fmt("critical pair within %.1e, eps0 = %.8f, degenerate case rejected: %s, %.1f s",
                  worst_pt, rep.epsilon0, rep_bad.holds ? "no" : "yes", dt)};
}

Outcome ac6_nu_selector() {
  double worst_margin = 1.0;
  for (int r = 3; r <= 9; ++r) {
    double nu = select_nu(r);
    double lower = std::max(1.0 / 6.0, 1.0 / 8.0 + 3.0 / (8.0 * (r - 1)));
    double upper = 0.25 + 0.25 / (r - 1);
    worst_margin = std::min({worst_margin, nu - lower, upper - nu});
  }
  bool ok = worst_margin > 1e-6;
  return {ok, fmt("min distance to the admissible-exponent bounds = %.4f over r in 3..9",
                  worst_margin)};
}

Outcome ac7_error_domination() {
  double nu = select_nu(4.0);
  DominationRatios d2 = error_domination_ratios(4.0, nu, 2);
  DominationRatios d6 = error_domination_ratios(4.0, nu, 6);
  double f1 = d2.commutator_ratio / d6.commutator_ratio;
  double f2 = d2.taylor_ratio / d6.taylor_ratio;
  bool ok = f1 >= 2.0 && f2 >= 2.0;
  return {ok, fmt("level 2 -> 6 decay factors: commutator %.2f, surrogate %.2f (nu = %.4f)",
                  f1, f2, nu)};
}

Outcome ac8_lower_bound() {
  auto t0 = std::chrono::steady_clock::now();
  Polynomial v = Polynomial::load(data_path("neg_q2_half_1d.pot"));
  double c64 = verify_quadratic_lower(v, Discretization::make(1, 64, 16, 8.0)).constant;
  double c96 = verify_quadratic_lower(v, Discretization::make(1, 96, 16, 8.0)).constant;
  double drift = std::abs(c96 - c64) / c64;
  double dt = seconds_since(t0);
  bool ok = c64 > 0.0 && c64 < 10.0 && c96 > 0.0 && c96 < 10.0 && drift < 0.20 && dt < 60.0;
  return {ok, fmt("c = %.6f (Nq=64) vs %.6f (Nq=96), drift %.1f%%, %.1f s",
                  c64, c96, 100.0 * drift, dt)};
}

Outcome ac9_global_estimate() {
  auto t0 = std::chrono::steady_clock::now();
  Polynomial v = Polynomial::load(data_path("neg_q4_1d.pot"));
  auto disc = Discretization::make(1, 64, 32, 8.0);
  EstimateReport rep = verify_global_estimate(v, disc);
  double dt = seconds_since(t0);
  bool cert_ok = rep.cert_value_below < 0.0 && rep.cert_value_above >= -2e-9 * rep.form_scale;
  bool ok = std::isfinite(rep.constant) && rep.constant < 1e6 && cert_ok && dt < 300.0;
  return {ok, fmt("C* = %.4f, form value %.3e below / %.2e relative above (>= -2e-9), %.1f s",
                  rep.constant, rep.cert_value_below, rep.cert_value_above / rep.form_scale, dt)};
}

Outcome ac10_inf_inequality() {
  InfInequalityReport coarse = verify_inf_inequality({1.0, 10.0, 100.0, 1000.0, 1e6});
  std::vector<double> xs;
  for (int i = 0; i < 50; ++i) xs.push_back(std::pow(10.0, 6.0 * i / 49.0));
  InfInequalityReport dense = verify_inf_inequality(xs);
  double change = std::abs(dense.sup_ratio - coarse.sup_ratio) / coarse.sup_ratio;
  bool ok = std::isfinite(coarse.sup_ratio) && coarse.sup_ratio > 0.0 && change < 0.05;
  return {ok, fmt("sup ratio %.6f, densified-sample change %.2f%%",
                  coarse.sup_ratio, 100.0 * change)};
}

Outcome ac11_compactness() {
  auto v = HomogeneousPotential::load(data_path("abstract_n1.pot"));
  CompactnessReport rep = compact_resolvent_indicator(v, 0.5, HessianNorm::OpNorm);
  bool ok = rep.violations.empty() && rep.worst_ratio >= 1.0 - 1e-6;
  return {ok, fmt("m_delta = %.6f, exponent = %.2f, worst ray ratio = %.9f, violations = %zu",
                  rep.m_delta, rep.exponent, rep.worst_ratio, rep.violations.size())};
}

}  // namespace

int main() {
  criterion(1, "velocity oscillator eigenvalues are exact half-integers", ac1_oscillator);
  criterion(2, "real part of the quadratic form reduces to the oscillator term", ac2_accretivity);
  criterion(3, "dyadic cutoffs square-sum to one and the localization identity closes",
            ac3_partition);
  criterion(4, "dyadic zoom preserves operator norms across levels", ac4_scaling);
  criterion(5, "sphere nondegeneracy checker pins the critical pair", ac5_assumption_checker);
  criterion(6, "localization exponent selector stays strictly admissible", ac6_nu_selector);
  criterion(7, "localization error ratios decay at least twofold over levels", ac7_error_domination);
  criterion(8, "gradient lower bound is positive, bounded, and grid-stable", ac8_lower_bound);
  criterion(9, "weighted-form constant search certifies a finite admissible value",
            ac9_global_estimate);
  criterion(10, "log-weight infimum comparison is finite and sampling-stable",
            ac10_inf_inequality);
  criterion(11, "weighted growth bound holds on every sampled ray", ac11_compactness);

  std::printf("%s\n", g_all_ok ? "acceptance: all criteria passed"
                               : "acceptance: at least one criterion FAILED");
  return g_all_ok ? 0 : 1;
}
