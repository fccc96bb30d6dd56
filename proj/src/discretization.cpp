#include "kfp/discretization.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace kfp {

Boundary boundary_from_string(const std::string& name) {
  if (name == "periodic") return Boundary::Periodic;
  if (name == "dirichlet") return Boundary::Dirichlet;
  throw std::invalid_argument("unknown boundary condition '" + name + "'");
}

std::string to_string(Boundary bc) {
  return bc == Boundary::Periodic ? "periodic" : "dirichlet";
}

Discretization Discretization::make(int d, int nq, int np, double box, Boundary bc) {
  if (d != 1 && d != 2) throw std::invalid_argument("discretization supports d in {1,2}");
  if (nq < 4 || np < 2) throw std::invalid_argument("grid too small");
  if (box <= 0.0) throw std::invalid_argument("box half-width must be positive");
  if (bc == Boundary::Periodic && nq % 2 != 0)
    throw std::invalid_argument("periodic grid needs an even point count");
  Discretization disc;
  disc.d = d;
  disc.nq = nq;
  disc.np = np;
  disc.box = box;
  disc.bc = bc;
  disc.qgrid.resize(nq);
  if (bc == Boundary::Periodic) {
    disc.dq = 2.0 * box / nq;
    for (int i = 0; i < nq; ++i) disc.qgrid[i] = -box + i * disc.dq;
  } else {
    disc.dq = 2.0 * box / (nq + 1);
    for (int i = 0; i < nq; ++i) disc.qgrid[i] = -box + (i + 1) * disc.dq;
  }
  return disc;
}

int Discretization::q_points() const { return d == 1 ? nq : nq * nq; }
int Discretization::p_modes() const { return d == 1 ? np : np * np; }

Discretization Discretization::scaled(int j) const {
  return make(d, nq, np, std::ldexp(box, -j), bc);
}

Eigen::VectorXd Discretization::q_point(int flat) const {
  Eigen::VectorXd q(d);
  if (d == 1) {
    q[0] = qgrid[flat];
  } else {
    q[0] = qgrid[flat / nq];
    q[1] = qgrid[flat % nq];
  }
  return q;
}

Eigen::MatrixXd q_derivative_matrix(const Discretization& disc) {
  int n = disc.nq;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  if (disc.bc == Boundary::Periodic) {
    // Circulant spectral matrix: entry depends on j-k only, odd in the
    // offset, so the matrix is antisymmetric by construction.
    std::vector<double> c(n, 0.0);
    for (int off = 1; off < n; ++off) {
      double sign = (off % 2 == 0) ? 1.0 : -1.0;
      c[off] = M_PI / disc.box * 0.5 * sign / std::tan(M_PI * off / n);
    }
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (j == k) continue;
        int off = j - k;
        m(j, k) = off > 0 ? c[off] : -c[-off];
      }
  } else {
    double w = 1.0 / (2.0 * disc.dq);
    for (int i = 0; i + 1 < n; ++i) {
      m(i, i + 1) = w;
      m(i + 1, i) = -w;
    }
  }
  return m;
}

SpectralBasis q_spectral_basis(const Discretization& disc) {
  int n = disc.nq;
  SpectralBasis out;
  out.vectors.resize(n, n);
  out.frequencies.resize(n);
  if (disc.bc == Boundary::Periodic) {
    int col = 0;
    out.vectors.col(col).setConstant(1.0 / std::sqrt(double(n)));
    out.frequencies[col++] = 0.0;
    for (int m = 1; m < n / 2; ++m) {
      double k = M_PI * m / disc.box;
      for (int i = 0; i < n; ++i) {
        double th = 2.0 * M_PI * m * i / n;
        out.vectors(i, col) = std::sqrt(2.0 / n) * std::cos(th);
        out.vectors(i, col + 1) = std::sqrt(2.0 / n) * std::sin(th);
      }
      out.frequencies[col] = k;
      out.frequencies[col + 1] = k;
      col += 2;
    }
    for (int i = 0; i < n; ++i) out.vectors(i, col) = (i % 2 == 0 ? 1.0 : -1.0) / std::sqrt(double(n));
    out.frequencies[col] = M_PI * (n / 2) / disc.box;
  } else {
    for (int m = 1; m <= n; ++m) {
      for (int i = 0; i < n; ++i)
        out.vectors(i, m - 1) = std::sqrt(2.0 / (n + 1)) * std::sin(M_PI * m * (i + 1) / (n + 1));
      out.frequencies[m - 1] = M_PI * m / (2.0 * disc.box);
    }
  }
  return out;
}

}  // namespace kfp
