#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "kfp/assumption.hpp"
#include "kfp/discretization.hpp"
#include "kfp/errors.hpp"
#include "kfp/estimates.hpp"
#include "kfp/json_io.hpp"
#include "kfp/log.hpp"
#include "kfp/operators.hpp"
#include "kfp/partition.hpp"
#include "kfp/polynomial.hpp"
#include "kfp/potential.hpp"

namespace {

// Exit contract: 0 ok, 1 input/parse/numerical error, 2 hypothesis or
// assumption failure, 3 admissible-constant search failure.
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitSearch = 3;

struct DiscFlags {
  int nq = 64;
  int np = 32;
  double box = 8.0;
  std::string bc = "periodic";
};

void add_disc_flags(CLI::App* cmd, DiscFlags& f) {
  cmd->add_option("--Nq", f.nq, "grid points per q axis");
  cmd->add_option("--Np", f.np, "Hermite modes per p axis");
  cmd->add_option("--L", f.box, "half-width of the q box [-L, L]^d");
  cmd->add_option("--bc", f.bc, "boundary condition")->check(CLI::IsMember({"periodic", "dirichlet"}));
}

kfp::Discretization make_disc(const DiscFlags& f, int d) {
  return kfp::Discretization::make(d, f.nq, f.np, f.box, kfp::boundary_from_string(f.bc));
}

int cmd_check(const std::string& path, const kfp::SearchParams& params,
              const std::string& out) {
  kfp::HomogeneousPotential v = kfp::HomogeneousPotential::load(path);
  kfp::AssumptionReport rep = kfp::check_assumption(v, params);
  kfp::emit_report(kfp::to_json(rep), out);
  return rep.holds ? kExitOk : kExitHypothesis;
}

int cmd_verify(const std::string& path, const DiscFlags& disc_flags,
               const kfp::SearchParams& search, const kfp::GlobalEstimateParams& params,
               const std::string& out) {
  kfp::HomogeneousPotential v = kfp::HomogeneousPotential::load(path);
  kfp::AssumptionReport assumption = kfp::check_assumption(v, search);
  if (!assumption.holds) {
    std::cerr << "assumption fails: " << assumption.failures.size()
              << " degenerate critical point(s); refusing to search\n";
    kfp::emit_report(kfp::to_json(assumption), out);
    return kExitHypothesis;
  }
  kfp::Discretization disc = make_disc(disc_flags, v.dim());
  kfp::EstimateReport rep = kfp::verify_global_estimate(v.poly(), disc, params);
  kfp::emit_report(kfp::to_json(rep), out);
  return kExitOk;
}

int cmd_spectrum(const std::string& op_name, const std::string& path,
                 const DiscFlags& disc_flags, int level, const std::string& out,
                 const std::string& mm_path) {
  int d = 1;
  kfp::Polynomial v;
  bool has_potential = !path.empty();
  if (has_potential) {
    v = kfp::Polynomial::load(path);
    d = v.dim();
  }
  kfp::Discretization disc = make_disc(disc_flags, d);

  kfp::OperatorMatrix op;
  if (op_name == "Op" || op_name == "op") {
    op = kfp::assemble_op(disc);
  } else if (!has_potential) {
    throw std::invalid_argument("operator '" + op_name + "' needs --potential");
  } else if (op_name == "XV" || op_name == "xv") {
    op = kfp::assemble_xv(v, disc);
  } else if (op_name == "KV" || op_name == "kv") {
    op = kfp::assemble_kv(v, disc);
  } else if (op_name == "Kj" || op_name == "kj") {
    op = kfp::assemble_kj(kfp::HomogeneousPotential::from(v), level, disc);
  } else {
    throw std::invalid_argument("unknown operator '" + op_name + "' (Op, XV, KV, Kj)");
  }

  if (!mm_path.empty()) kfp::write_matrix_market(mm_path, op.mat);

  Eigen::VectorXcd eigs = kfp::dense_spectrum(op.mat);
  if (out.empty()) {
    std::cout << "index,real,imag\n";
    char buf[96];
    for (long i = 0; i < eigs.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g\n", i, eigs(i).real(), eigs(i).imag());
      std::cout << buf;
    }
  } else {
    kfp::write_spectrum_csv(out, eigs);
  }
  return kExitOk;
}

int cmd_partition_demo(double h, double r, double nu_override, const std::string& out) {
  double nu = nu_override > 0.0 ? nu_override : kfp::select_nu(r);
  kfp::assert_nu_admissible(r, nu);
  kfp::FinePartition fine(h, nu, 1);
  kfp::DyadicPartition dyadic;

  std::cerr << "nu = " << nu << ", patch radius rho = " << fine.rho() << ", patches = "
            << fine.size() << " (d=1 slice)\n";

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw std::runtime_error("cannot open '" + out + "' for writing");
    os = &file;
  }

  int pick = 0;
  for (int k = 0; k < fine.size(); ++k)
    if (std::abs(fine.centers()[k](0) - 1.0) < std::abs(fine.centers()[pick](0) - 1.0))
      pick = k;

  *os << "x,chi_m1,chi_0,chi_1,chi_2,dyadic_sumsq,theta,theta_sumsq\n";
  char buf[256];
  const int samples = 800;
  for (int i = 0; i <= samples; ++i) {
    double x = 4.0 * i / samples;
    Eigen::VectorXd q(1);
    q(0) = x;
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", x,
                  dyadic.chi_radial(-1, x), dyadic.chi_radial(0, x), dyadic.chi_radial(1, x),
                  dyadic.chi_radial(2, x), dyadic.sum_squares(q), fine.theta(pick, q),
                  fine.sum_squares(q));
    *os << buf;
  }
  return kExitOk;
}

int cmd_constants(const std::string& path, double delta, const std::string& convention,
                  const kfp::SearchParams& search, const std::string& out) {
  kfp::Polynomial v = kfp::Polynomial::load(path);
  nlohmann::ordered_json j;
  j["potential"] = v.to_string();

  if (v.total_degree() <= 2) j["potential_constants"] = kfp::to_json(kfp::potential_constants(v));

  auto hom_degree = v.homogeneous_degree();
  if (hom_degree && *hom_degree >= 2) {
    kfp::HomogeneousPotential hv = kfp::HomogeneousPotential::from(v);
    j["assumption"] = kfp::to_json(kfp::check_assumption(hv, search));
    if (*hom_degree > 2) {
      kfp::HessianNorm conv = kfp::hessian_norm_from_string(convention);
      kfp::GrowthReport growth = kfp::growth_exponent(hv, delta, conv);
      j["growth"] = {{"delta", delta},
                     {"convention", convention},
                     {"exponent", growth.exponent},
                     {"m_delta", growth.m_delta}};
    }
  }
  kfp::emit_report(j, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral toolkit for kinetic Fokker-Planck operators with polynomial potentials"};
  app.require_subcommand(1);

  int threads = 1;
  app.add_option("--threads", threads, "worker thread cap")->check(CLI::PositiveNumber);

  std::string potential, out;
  DiscFlags disc_flags;
  kfp::SearchParams search;
  kfp::GlobalEstimateParams params;
  std::string convention = "opnorm";
  std::string drop_weights;
  std::string op_name = "KV", mm_path;
  int level = 1;
  double h = 0.0009765625, r = 4.0, nu_override = 0.0, delta = 0.5;

  CLI::App* check = app.add_subcommand("check", "test the sphere nondegeneracy condition");
  check->add_option("potential", potential)->required();
  check->add_option("--resolution", search.resolution, "sphere scan spacing");
  check->add_option("--tol", search.refine_tol, "refinement residual target");
  check->add_option("--out", out, "JSON output path (stdout when omitted)");

  CLI::App* verify = app.add_subcommand("verify", "search the smallest admissible constant "
                                                  "for the weighted lower bound");
  verify->add_option("potential", potential)->required();
  add_disc_flags(verify, disc_flags);
  verify->add_option("--Cmax", params.c_max, "search cap");
  verify->add_option("--tol", params.rel_tol, "relative bisection gap");
  verify->add_option("--seed", params.seed, "recorded RNG seed");
  verify->add_option("--resolution", search.resolution, "sphere scan spacing");
  verify->add_option("--convention", convention, "Hessian norm convention")
      ->check(CLI::IsMember({"opnorm", "det"}));
  verify->add_option("--drop-weights", drop_weights,
                     "'all' drops the weighted terms (trivial form)")
      ->check(CLI::IsMember({"all"}));
  verify->add_option("--out", out, "JSON output path");

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of an assembled operator");
  spectrum->add_option("--op", op_name, "Op, XV, KV, or Kj");
  spectrum->add_option("--potential", potential, "potential file (not needed for Op)");
  add_disc_flags(spectrum, disc_flags);
  spectrum->add_option("--j", level, "dyadic level for Kj");
  spectrum->add_option("--out", out, "CSV output path (stdout when omitted)");
  spectrum->add_option("--mm", mm_path, "also export the matrix (MatrixMarket)");

  CLI::App* demo = app.add_subcommand("partition-demo", "emit cutoff profiles as CSV");
  demo->add_option("--scale", h, "fine localization scale in (0,1)");
  demo->add_option("--r", r, "potential degree fixing nu");
  demo->add_option("--nu", nu_override, "override the exponent nu");
  demo->add_option("--out", out, "CSV output path (stdout when omitted)");

  CLI::App* constants = app.add_subcommand("constants", "pointwise constants of a potential");
  constants->add_option("potential", potential)->required();
  constants->add_option("--delta", delta, "growth-exponent parameter in (0,1)");
  constants->add_option("--convention", convention, "Hessian norm convention")
      ->check(CLI::IsMember({"opnorm", "det"}));
  constants->add_option("--resolution", search.resolution, "sphere scan spacing");
  constants->add_option("--out", out, "JSON output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  kfp::log::set_threads(threads);
  if (!drop_weights.empty()) params.weight_scale = 0.0;
  params.convention = kfp::hessian_norm_from_string(convention);

  try {
    if (check->parsed()) return cmd_check(potential, search, out);
    if (verify->parsed()) return cmd_verify(potential, disc_flags, search, params, out);
    if (spectrum->parsed()) return cmd_spectrum(op_name, potential, disc_flags, level, out, mm_path);
    if (demo->parsed()) return cmd_partition_demo(h, r, nu_override, out);
    if (constants->parsed()) return cmd_constants(potential, delta, convention, search, out);
  } catch (const kfp::HypothesisViolated& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const kfp::SearchNotFound& e) {
    std::cerr << "search failed: " << e.what() << "\n";
    return kExitSearch;
  } catch (const kfp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const kfp::NonConvergence& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
