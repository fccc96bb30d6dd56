#include "kfp/operators.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "kfp/errors.hpp"
#include "kfp/hermite.hpp"
#include "kfp/log.hpp"

namespace kfp {

namespace {

using SpMat = Eigen::SparseMatrix<double>;

SpMat sparse_identity(int n) {
  SpMat m(n, n);
  m.setIdentity();
  return m;
}

SpMat sparse_diag(const Eigen::VectorXd& v) {
  SpMat m(static_cast<int>(v.size()), static_cast<int>(v.size()));
  m.reserve(Eigen::VectorXi::Constant(static_cast<int>(v.size()), 1));
  for (int i = 0; i < v.size(); ++i) m.insert(i, i) = v(i);
  m.makeCompressed();
  return m;
}

SpMat kron(const SpMat& a, const SpMat& b) {
  SpMat out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

// Per-axis operator lifted to the full p-factor (identity on other axes).
SpMat lift_p(const SpMat& axis_op, int axis, const Discretization& disc) {
  if (disc.d == 1) return axis_op;
  SpMat ip = sparse_identity(disc.np);
  return axis == 0 ? kron(axis_op, ip) : kron(ip, axis_op);
}

SpMat lift_q(const SpMat& axis_op, int axis, const Discretization& disc) {
  if (disc.d == 1) return axis_op;
  SpMat iq = sparse_identity(disc.nq);
  return axis == 0 ? kron(axis_op, iq) : kron(iq, axis_op);
}

// p.dq part: sum over axes of (D_axis in q) x (p_axis in p).
SpMat transport_part(const Discretization& disc) {
  SpMat d1 = q_derivative_matrix(disc).sparseView();
  SpMat p1 = hermite_p(disc.np);
  SpMat sum = kron(lift_q(d1, 0, disc), lift_p(p1, 0, disc));
  for (int axis = 1; axis < disc.d; ++axis)
    sum += kron(lift_q(d1, axis, disc), lift_p(p1, axis, disc));
  sum.makeCompressed();
  return sum;
}

// grad V(q).dp part: sum over axes of diag(dV/dq_axis on the grid) x (d/dp_axis).
SpMat drift_part(const Polynomial& v, const Discretization& disc) {
  SpMat a1 = hermite_dp(disc.np);
  SpMat sum(disc.dim(), disc.dim());
  for (int axis = 0; axis < disc.d; ++axis) {
    Polynomial dv = v.derivative(axis);
    Eigen::VectorXd g(disc.q_points());
    for (int iq = 0; iq < disc.q_points(); ++iq) g(iq) = dv(disc.q_point(iq));
    sum += kron(sparse_diag(g), lift_p(a1, axis, disc));
  }
  sum.makeCompressed();
  return sum;
}

Eigen::VectorXd oscillator_full_diag(const Discretization& disc) {
  Eigen::VectorXd per_p(disc.p_modes());
  for (int ip = 0; ip < disc.p_modes(); ++ip) {
    if (disc.d == 1) {
      per_p(ip) = ip + 0.5;
    } else {
      per_p(ip) = (ip / disc.np) + (ip % disc.np) + 1.0;
    }
  }
  Eigen::VectorXd full(disc.dim());
  for (int iq = 0; iq < disc.q_points(); ++iq)
    full.segment(iq * disc.p_modes(), disc.p_modes()) = per_p;
  return full;
}

void require_dim(const Polynomial& v, const Discretization& disc) {
  if (v.dim() != disc.d)
    throw std::invalid_argument("potential dimension " + std::to_string(v.dim()) +
                                " does not match grid dimension " + std::to_string(disc.d));
}

}  // namespace

OperatorMatrix assemble_op(const Discretization& disc) {
  OperatorMatrix out;
  out.mat = sparse_diag(oscillator_full_diag(disc));
  out.name = "Op";
  out.disc = disc;
  return out;
}

OperatorMatrix assemble_xv(const Polynomial& v, const Discretization& disc) {
  require_dim(v, disc);
  OperatorMatrix out;
  out.mat = transport_part(disc) - drift_part(v, disc);
  out.mat.makeCompressed();
  out.name = "X_V";
  out.disc = disc;
  out.potential = v.to_string();
  return out;
}

OperatorMatrix assemble_kv(const Polynomial& v, const Discretization& disc) {
  OperatorMatrix out = assemble_xv(v, disc);
  out.mat += sparse_diag(oscillator_full_diag(disc));
  out.mat.makeCompressed();
  out.name = "K_V";
  return out;
}

OperatorMatrix assemble_kj(const HomogeneousPotential& v, int j,
                           const Discretization& disc) {
  return assemble_kj_drift(v.poly(), v.degree(), j, disc);
}

OperatorMatrix assemble_kj_drift(const Polynomial& drift_potential, int degree, int j,
                                 const Discretization& disc) {
  if (j < 0) throw std::invalid_argument("dyadic level j must be >= 0");
  if (degree < 2) throw std::invalid_argument("degree must be >= 2");
  require_dim(drift_potential, disc);
  double t = std::ldexp(1.0, -j);
  double s = std::ldexp(1.0, j * (degree - 1));
  OperatorMatrix out;
  out.mat = t * transport_part(disc) - s * drift_part(drift_potential, disc);
  out.mat += sparse_diag(oscillator_full_diag(disc));
  out.mat.makeCompressed();
  out.name = "K_j(j=" + std::to_string(j) + ")";
  out.disc = disc;
  out.potential = drift_potential.to_string();
  return out;
}

Eigen::SparseMatrix<double> momentum_multiplier(const Discretization& disc,
                                                const Eigen::MatrixXd& g) {
  if (g.rows() != disc.q_points() || g.cols() != disc.d)
    throw std::invalid_argument("multiplier values must be q_points x d");
  SpMat p1 = hermite_p(disc.np);
  SpMat sum(disc.dim(), disc.dim());
  for (int axis = 0; axis < disc.d; ++axis)
    sum += kron(sparse_diag(g.col(axis)), lift_p(p1, axis, disc));
  sum.makeCompressed();
  return sum;
}

std::string weight_to_string(Weight w) {
  switch (w) {
    case Weight::Op: return "Op";
    case Weight::Grad: return "grad";
    case Weight::Hess: return "hess";
    case Weight::Dq: return "Dq";
  }
  return "Op";
}

Weight weight_from_string(const std::string& s) {
  if (s == "Op" || s == "op") return Weight::Op;
  if (s == "grad") return Weight::Grad;
  if (s == "hess") return Weight::Hess;
  if (s == "Dq" || s == "dq") return Weight::Dq;
  throw std::invalid_argument("unknown weight '" + s + "' (Op, grad, hess, Dq)");
}

Eigen::VectorXd WeightedMultiplier::apply(const Eigen::VectorXd& u) const {
  if (diagonal) return diag.cwiseProduct(u);
  if (u.size() != static_cast<long>(q_points) * p_modes)
    throw std::invalid_argument("state size does not match multiplier");
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> in(u.data(), q_points, p_modes);
  RowMat out = qblock * in;
  return Eigen::Map<const Eigen::VectorXd>(out.data(), u.size());
}

void WeightedMultiplier::add_square_into(Eigen::MatrixXd& acc) const {
  if (diagonal) {
    acc.diagonal() += diag.cwiseProduct(diag);
    return;
  }
  Eigen::MatrixXd q2 = qblock * qblock;
  for (int iq = 0; iq < q_points; ++iq)
    for (int jq = 0; jq < q_points; ++jq) {
      double val = q2(iq, jq);
      if (val == 0.0) continue;
      for (int ip = 0; ip < p_modes; ++ip)
        acc(iq * p_modes + ip, jq * p_modes + ip) += val;
    }
}

Eigen::MatrixXd WeightedMultiplier::dense() const {
  if (diagonal) return Eigen::MatrixXd(diag.asDiagonal());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim(), dim());
  for (int iq = 0; iq < q_points; ++iq)
    for (int jq = 0; jq < q_points; ++jq)
      for (int ip = 0; ip < p_modes; ++ip)
        out(iq * p_modes + ip, jq * p_modes + ip) = qblock(iq, jq);
  return out;
}

WeightedMultiplier assemble_weight(Weight which, const Polynomial& v,
                                   const Discretization& disc,
                                   HessianNorm convention, bool log_corrected) {
  WeightedMultiplier w;
  w.which = which;
  w.q_points = disc.q_points();
  w.p_modes = disc.p_modes();
  double min_arg = std::numeric_limits<double>::infinity();
  double min_val = std::numeric_limits<double>::infinity();
  // L is not monotone (it dips at s = e-1), so the smallest realized value
  // must be tracked separately from the smallest argument.
  auto weigh = [&min_arg, &min_val, log_corrected](double s) {
    double arg = std::max(s, 1.0);
    min_arg = std::min(min_arg, arg);
    double val = log_corrected ? log_weight(arg) : arg;
    min_val = std::min(min_val, val);
    return val;
  };

  if (which == Weight::Op) {
    Eigen::VectorXd osc = oscillator_full_diag(disc);
    w.diag.resize(disc.dim());
    for (int i = 0; i < disc.dim(); ++i) w.diag(i) = weigh(osc(i));
  } else if (which == Weight::Grad || which == Weight::Hess) {
    require_dim(v, disc);
    w.diag.resize(disc.dim());
    for (int iq = 0; iq < disc.q_points(); ++iq) {
      Eigen::VectorXd q = disc.q_point(iq);
      double s;
      if (which == Weight::Grad) {
        double g2 = v.gradient(q).squaredNorm();
        s = std::cbrt(1.0 + g2);  // <g>^{2/3}
      } else {
        double h = hessian_norm(v.hessian(q), convention);
        s = std::pow(1.0 + h * h, 0.25);  // <H>^{1/2}
      }
      double val = weigh(s);
      w.diag.segment(iq * disc.p_modes(), disc.p_modes()).setConstant(val);
    }
  } else {  // Dq: diagonal in the q-spectral basis, conjugated back
    w.diagonal = false;
    SpectralBasis basis = q_spectral_basis(disc);
    int nq = disc.nq;
    if (disc.d == 1) {
      Eigen::VectorXd lam(nq);
      for (int m = 0; m < nq; ++m) {
        double f2 = basis.frequencies(m) * basis.frequencies(m);
        lam(m) = weigh(std::cbrt(1.0 + f2));  // <|D_q|>^{2/3}
      }
      w.qblock = basis.vectors * lam.asDiagonal() * basis.vectors.transpose();
    } else {
      Eigen::MatrixXd b2 = Eigen::kroneckerProduct(basis.vectors, basis.vectors);
      Eigen::VectorXd lam(nq * nq);
      for (int m1 = 0; m1 < nq; ++m1)
        for (int m2 = 0; m2 < nq; ++m2) {
          double f2 = basis.frequencies(m1) * basis.frequencies(m1) +
                      basis.frequencies(m2) * basis.frequencies(m2);
          lam(m1 * nq + m2) = weigh(std::cbrt(1.0 + f2));
        }
      w.qblock = b2 * lam.asDiagonal() * b2.transpose();
    }
    w.qblock = 0.5 * (w.qblock + w.qblock.transpose()).eval();
  }

  w.min_argument = min_arg;
  w.min_value = min_val;
  return w;
}

namespace {

// Shared inverse-iteration driver; solve(x) must apply M^{-1} for the normal
// matrix M = (K+shift)^T (K+shift).
template <typename Solve>
double inverse_iterate(const Solve& solve, int n, double rel_tol, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = gauss(rng);
  x.normalize();

  double best_resid = std::numeric_limits<double>::infinity();
  int since_improvement = 0;
  for (int iter = 0; iter < 500; ++iter) {
    Eigen::VectorXd y = solve(x);
    double yy = y.squaredNorm();
    if (!(yy > 0.0) || !std::isfinite(yy))
      throw Breakdown("inverse iteration produced a non-finite iterate");
    double lam = y.dot(x) / yy;  // Rayleigh quotient, using M y = x
    double resid = (x - lam * y).norm() / std::sqrt(yy);
    if (resid <= rel_tol * std::abs(lam) && lam > 0.0) return std::sqrt(lam);
    if (resid < 0.999 * best_resid) {
      best_resid = resid;
      since_improvement = 0;
    } else if (++since_improvement > 60) {
      throw Breakdown("inverse iteration stagnated at residual " + std::to_string(resid));
    }
    x = y / std::sqrt(yy);
  }
  throw Breakdown("inverse iteration did not converge in 500 steps");
}

}  // namespace

double smallest_singular_value(const Eigen::SparseMatrix<double>& k, double shift,
                               double rel_tol, unsigned seed, int dense_threshold) {
  const int n = static_cast<int>(k.rows());
  if (k.cols() != n) throw std::invalid_argument("matrix must be square");

  if (n <= dense_threshold) {
    Eigen::MatrixXd kd = Eigen::MatrixXd(k);
    kd.diagonal().array() += shift;
    Eigen::MatrixXd m = kd.transpose() * kd;
    double scale = std::max(1.0, m.diagonal().maxCoeff());
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    double jitter = 1e-15 * scale;
    while (llt.info() != Eigen::Success && jitter < 1e-6 * scale) {
      log::debug("normal matrix not positive definite, retrying with jitter");
      Eigen::MatrixXd mj = m;
      mj.diagonal().array() += jitter;
      llt.compute(mj);
      jitter *= 100.0;
    }
    if (llt.info() != Eigen::Success)
      throw Breakdown("normal matrix is numerically singular");
    return inverse_iterate([&](const Eigen::VectorXd& x) { return llt.solve(x).eval(); },
                           n, rel_tol, seed);
  }

  SpMat ks = k;
  SpMat ident(n, n);
  ident.setIdentity();
  ks += shift * ident;
  ks.makeCompressed();
  SpMat m = SpMat(ks.transpose()) * ks;
  m.makeCompressed();
  Eigen::SimplicialLDLT<SpMat> solver;
  solver.compute(m);
  if (solver.info() != Eigen::Success) {
    double scale = 1.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, m.coeff(i, i));
    SpMat mj = m + (1e-12 * scale) * ident;
    solver.compute(mj);
    if (solver.info() != Eigen::Success)
      throw Breakdown("sparse factorization of the normal matrix failed");
  }
  return inverse_iterate([&](const Eigen::VectorXd& x) { return solver.solve(x).eval(); },
                         n, rel_tol, seed);
}

Eigen::VectorXcd dense_spectrum(const Eigen::SparseMatrix<double>& m) {
  Eigen::MatrixXd dense = Eigen::MatrixXd(m);
  Eigen::EigenSolver<Eigen::MatrixXd> es(dense, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw Breakdown("dense eigensolver failed");
  Eigen::VectorXcd eigs = es.eigenvalues();
  std::vector<std::complex<double>> v(eigs.data(), eigs.data() + eigs.size());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (size_t i = 0; i < v.size(); ++i) eigs(static_cast<long>(i)) = v[i];
  return eigs;
}

void write_matrix_market(const std::string& path, const Eigen::SparseMatrix<double>& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  SpMat c = m;
  c.makeCompressed();
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << " " << m.cols() << " " << c.nonZeros() << "\n";
  char buf[64];
  for (int outer = 0; outer < c.outerSize(); ++outer)
    for (SpMat::InnerIterator it(c, outer); it; ++it) {
      std::snprintf(buf, sizeof(buf), "%ld %ld %.17g\n", it.row() + 1l, it.col() + 1l,
                    it.value());
      out << buf;
    }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_spectrum_csv(const std::string& path, const Eigen::VectorXcd& eigs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "index,real,imag\n";
  char buf[96];
  for (long i = 0; i < eigs.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g\n", i, eigs(i).real(), eigs(i).imag());
    out << buf;
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace kfp
