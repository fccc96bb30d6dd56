#pragma once

// Independent oracles the tests compare library results against. Everything
// here is deliberately naive: finite differences, dense eigensolves, brute
// grid scans. No kfp headers except the polynomial type being probed.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "kfp/polynomial.hpp"

namespace oracle {

// Central finite-difference gradient of a polynomial.
inline Eigen::VectorXd fd_gradient(const kfp::Polynomial& v, const Eigen::VectorXd& q,
                                   double step = 1e-5) {
  Eigen::VectorXd g(q.size());
  for (int i = 0; i < q.size(); ++i) {
    Eigen::VectorXd qp = q, qm = q;
    qp(i) += step;
    qm(i) -= step;
    g(i) = (v(qp) - v(qm)) / (2.0 * step);
  }
  return g;
}

inline Eigen::MatrixXd fd_hessian(const kfp::Polynomial& v, const Eigen::VectorXd& q,
                                  double step = 1e-4) {
  Eigen::MatrixXd h(q.size(), q.size());
  for (int i = 0; i < q.size(); ++i) {
    Eigen::VectorXd qp = q, qm = q;
    qp(i) += step;
    qm(i) -= step;
    h.col(i) = (fd_gradient(v, qp, step) - fd_gradient(v, qm, step)) / (2.0 * step);
  }
  return 0.5 * (h + h.transpose());
}

// Eigenvalues of 1/2(-d^2/dp^2 + p^2) by central differences on [-span, span].
// Validates the oscillator convention independently of the Hermite ladder.
inline Eigen::VectorXd fd_oscillator_eigenvalues(int n_points = 400, double span = 8.0) {
  double h = 2.0 * span / (n_points + 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_points, n_points);
  for (int i = 0; i < n_points; ++i) {
    double p = -span + (i + 1) * h;
    m(i, i) = 1.0 / (h * h) + 0.5 * p * p;
    if (i + 1 < n_points) {
      m(i, i + 1) = -0.5 / (h * h);
      m(i + 1, i) = -0.5 / (h * h);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Brute 1-D minimization on a dense grid plus local refinement.
inline double grid_min(const std::function<double(double)>& f, double a, double b,
                       int samples = 200000) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) best = std::min(best, f(a + (b - a) * i / samples));
  return best;
}

// Minimum of |grad V| over the unit circle by dense angle scan (d = 2).
inline double circle_min_gradient(const kfp::Polynomial& v, int samples = 400000) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    double t = 2.0 * M_PI * i / samples;
    Eigen::VectorXd q(2);
    q << std::cos(t), std::sin(t);
    best = std::min(best, v.gradient(q).norm());
  }
  return best;
}

struct MmEntry {
  long row, col;
  double value;
};

// Minimal MatrixMarket coordinate reader for the export round-trip test.
inline std::vector<MmEntry> read_matrix_market(const std::string& path, long& rows, long& cols) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  std::getline(in, line);
  if (line.find("%%MatrixMarket matrix coordinate real general") != 0)
    throw std::runtime_error("unexpected MatrixMarket banner: " + line);
  long nnz = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '%') continue;
    std::istringstream hs(line);
    hs >> rows >> cols >> nnz;
    break;
  }
  std::vector<MmEntry> entries;
  entries.reserve(nnz);
  MmEntry e;
  while (in >> e.row >> e.col >> e.value) entries.push_back(e);
  return entries;
}

inline std::string data_path(const std::string& name) {
  return std::string(KFP_DATA_DIR) + "/" + name;
}

}  // namespace oracle
