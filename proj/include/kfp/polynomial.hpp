#pragma once

// Sparse multivariate polynomials with nonnegative integer exponents, and the
// homogeneous-potential wrapper used by the rest of the toolkit.
//
// Text format, one monomial per line:
//     coeff e1 e2 ... ed
// with '#' starting a comment. The number of exponent columns fixes the
// dimension and must agree across lines.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "kfp/errors.hpp"

namespace kfp {

struct Monomial {
  double coeff = 0.0;
  std::vector<int> exps;
  int degree() const {
    int s = 0;
    for (int e : exps) s += e;
    return s;
  }
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int dim) : dim_(dim) {}
  Polynomial(int dim, std::vector<Monomial> terms);

  // Parses the text format above. Throws ParseError (with a line number) on
  // malformed input; a file with no monomial lines at all is rejected.
  static Polynomial parse(const std::string& text);
  static Polynomial load(const std::string& path);

  int dim() const { return dim_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Largest total degree among monomials; 0 for the zero polynomial.
  int total_degree() const;

  // Common total degree when every monomial shares one, nullopt otherwise.
  // The zero polynomial is reported homogeneous of degree 0.
  std::optional<int> homogeneous_degree() const;

  double operator()(const Eigen::VectorXd& q) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& q) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& q) const;
  Polynomial derivative(int axis) const;

  void add_term(double coeff, std::vector<int> exps);
  std::string to_string() const;

 private:
  int dim_ = 0;
  std::vector<Monomial> terms_;
  void normalize();
};

// A potential V with V(lambda q) = lambda^r V(q). The factory validates the
// monomial degrees and requires r >= 2; lower degrees carry no interesting
// scaling and are handled as plain polynomials where needed.
class HomogeneousPotential {
 public:
  static HomogeneousPotential from(Polynomial p);
  static HomogeneousPotential load(const std::string& path);

  const Polynomial& poly() const { return poly_; }
  int degree() const { return degree_; }
  int dim() const { return poly_.dim(); }

  double operator()(const Eigen::VectorXd& q) const { return poly_(q); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& q) const { return poly_.gradient(q); }
  Eigen::MatrixXd hessian(const Eigen::VectorXd& q) const { return poly_.hessian(q); }

 private:
  HomogeneousPotential(Polynomial p, int r) : poly_(std::move(p)), degree_(r) {}
  Polynomial poly_;
  int degree_ = 0;
};

}  // namespace kfp
