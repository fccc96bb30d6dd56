#include "kfp/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace kfp {

Polynomial::Polynomial(int dim, std::vector<Monomial> terms)
    : dim_(dim), terms_(std::move(terms)) {
  for (const auto& m : terms_) {
    if (static_cast<int>(m.exps.size()) != dim_)
      throw std::invalid_argument("monomial dimension mismatch");
    for (int e : m.exps)
      if (e < 0) throw std::invalid_argument("negative exponent");
  }
  normalize();
}

void Polynomial::normalize() {
  std::map<std::vector<int>, double> merged;
  for (const auto& m : terms_) merged[m.exps] += m.coeff;
  terms_.clear();
  for (const auto& [exps, c] : merged)
    if (c != 0.0) terms_.push_back({c, exps});
}

void Polynomial::add_term(double coeff, std::vector<int> exps) {
  if (static_cast<int>(exps.size()) != dim_)
    throw std::invalid_argument("monomial dimension mismatch");
  terms_.push_back({coeff, std::move(exps)});
  normalize();
}

Polynomial Polynomial::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int dim = -1;
  std::vector<Monomial> terms;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    double coeff;
    if (!(ls >> coeff)) {
      std::string leftover;
      if (ls.clear(), ls >> leftover)
        throw ParseError("expected a numeric coefficient, got '" + leftover + "'", line_no);
      continue;  // blank or comment-only line
    }
    std::vector<int> exps;
    double v;
    while (ls >> v) {
      if (v < 0 || v != std::floor(v))
        throw ParseError("exponents must be nonnegative integers", line_no);
      exps.push_back(static_cast<int>(v));
    }
    if (!ls.eof()) {
      std::string leftover;
      ls.clear();
      ls >> leftover;
      throw ParseError("trailing garbage '" + leftover + "'", line_no);
    }
    if (exps.empty())
      throw ParseError("monomial line needs at least one exponent column", line_no);
    if (dim < 0)
      dim = static_cast<int>(exps.size());
    else if (static_cast<int>(exps.size()) != dim)
      throw ParseError("expected " + std::to_string(dim) + " exponent columns, got " +
                           std::to_string(exps.size()),
                       line_no);
    terms.push_back({coeff, std::move(exps)});
  }
  if (dim < 0) throw ParseError("no monomials found", line_no == 0 ? 1 : line_no);
  return Polynomial(dim, std::move(terms));
}

Polynomial Polynomial::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse(buf.str());
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& m : terms_) d = std::max(d, m.degree());
  return d;
}

std::optional<int> Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return 0;
  int r = terms_.front().degree();
  for (const auto& m : terms_)
    if (m.degree() != r) return std::nullopt;
  return r;
}

namespace {
// x^e with integer e >= 0; exact for the small exponents seen here.
inline double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}
}  // namespace

double Polynomial::operator()(const Eigen::VectorXd& q) const {
  double s = 0.0;
  for (const auto& m : terms_) {
    double t = m.coeff;
    for (int i = 0; i < dim_; ++i) t *= ipow(q[i], m.exps[i]);
    s += t;
  }
  return s;
}

Eigen::VectorXd Polynomial::gradient(const Eigen::VectorXd& q) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
  for (const auto& m : terms_) {
    for (int a = 0; a < dim_; ++a) {
      if (m.exps[a] == 0) continue;
      double t = m.coeff * m.exps[a] * ipow(q[a], m.exps[a] - 1);
      for (int i = 0; i < dim_; ++i)
        if (i != a) t *= ipow(q[i], m.exps[i]);
      g[a] += t;
    }
  }
  return g;
}

Eigen::MatrixXd Polynomial::hessian(const Eigen::VectorXd& q) const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim_, dim_);
  for (const auto& m : terms_) {
    for (int a = 0; a < dim_; ++a) {
      if (m.exps[a] == 0) continue;
      // diagonal entry
      if (m.exps[a] >= 2) {
        double t = m.coeff * m.exps[a] * (m.exps[a] - 1) * ipow(q[a], m.exps[a] - 2);
        for (int i = 0; i < dim_; ++i)
          if (i != a) t *= ipow(q[i], m.exps[i]);
        h(a, a) += t;
      }
      for (int b = a + 1; b < dim_; ++b) {
        if (m.exps[b] == 0) continue;
        double t = m.coeff * m.exps[a] * m.exps[b] * ipow(q[a], m.exps[a] - 1) *
                   ipow(q[b], m.exps[b] - 1);
        for (int i = 0; i < dim_; ++i)
          if (i != a && i != b) t *= ipow(q[i], m.exps[i]);
        h(a, b) += t;
        h(b, a) += t;
      }
    }
  }
  return h;
}

Polynomial Polynomial::derivative(int axis) const {
  if (axis < 0 || axis >= dim_) throw std::invalid_argument("derivative axis out of range");
  std::vector<Monomial> out;
  for (const auto& m : terms_) {
    if (m.exps[axis] == 0) continue;
    Monomial d = m;
    d.coeff *= m.exps[axis];
    d.exps[axis] -= 1;
    out.push_back(std::move(d));
  }
  return Polynomial(dim_, std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& m : terms_) {
    if (!first) out << " + ";
    first = false;
    out << m.coeff;
    for (int i = 0; i < dim_; ++i) {
      if (m.exps[i] == 0) continue;
      out << "*q" << (i + 1);
      if (m.exps[i] > 1) out << "^" << m.exps[i];
    }
  }
  return out.str();
}

HomogeneousPotential HomogeneousPotential::from(Polynomial p) {
  auto r = p.homogeneous_degree();
  if (!r)
    throw std::invalid_argument("potential is not homogeneous: " + p.to_string());
  if (*r < 2)
    throw std::invalid_argument("homogeneous degree must be >= 2, got " + std::to_string(*r));
  return HomogeneousPotential(std::move(p), *r);
}

HomogeneousPotential HomogeneousPotential::load(const std::string& path) {
  return from(Polynomial::load(path));
}

}  // namespace kfp
