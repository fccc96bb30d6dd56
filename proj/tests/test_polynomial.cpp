#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "kfp/polynomial.hpp"
#include "support/oracles.hpp"

using kfp::HomogeneousPotential;
using kfp::ParseError;
using kfp::Polynomial;

TEST_CASE("parse and evaluate a two-term polynomial") {
  Polynomial p = Polynomial::parse("# comment\n-1 4 0\n-1 2 2\n");
  CHECK(p.dim() == 2);
  CHECK(p.terms().size() == 2);
  Eigen::VectorXd q(2);
  q << 2.0, 3.0;
  CHECK(p(q) == doctest::Approx(-16.0 - 4.0 * 9.0).epsilon(1e-14));
  CHECK(p.total_degree() == 4);
  CHECK(p.homogeneous_degree().has_value());
  CHECK(*p.homogeneous_degree() == 4);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(Polynomial::parse(""), ParseError);
  CHECK_THROWS_AS(Polynomial::parse("# only comments\n"), ParseError);
  try {
    Polynomial::parse("1 2\nbad 3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(Polynomial::parse("1 2 3\n1 2\n"), ParseError);   // column mismatch
  CHECK_THROWS_AS(Polynomial::parse("1 -2\n"), ParseError);          // negative exponent
  CHECK_THROWS_AS(Polynomial::parse("1 2.5\n"), ParseError);         // fractional exponent
  CHECK_THROWS_AS(Polynomial::parse("1 2 junk\n"), ParseError);      // trailing garbage
}

TEST_CASE("duplicate monomials merge and zeros drop") {
  Polynomial p = Polynomial::parse("1 2\n2 2\n-3 2\n5 1\n");
  CHECK(p.terms().size() == 1);  // q^2 terms cancel entirely
  Eigen::VectorXd q(1);
  q << 3.0;
  CHECK(p(q) == doctest::Approx(15.0));
}

TEST_CASE("gradient and hessian match finite differences") {
  Polynomial p = Polynomial::parse("2 3 1\n-1 0 4\n0.5 1 1\n");
  Eigen::VectorXd q(2);
  q << 0.7, -1.3;
  Eigen::VectorXd g = p.gradient(q);
  Eigen::VectorXd g_fd = oracle::fd_gradient(p, q);
  CHECK((g - g_fd).norm() < 1e-7 * (1.0 + g.norm()));
  Eigen::MatrixXd h = p.hessian(q);
  Eigen::MatrixXd h_fd = oracle::fd_hessian(p, q);
  CHECK((h - h_fd).norm() < 1e-5 * (1.0 + h.norm()));
  CHECK((h - h.transpose()).norm() == 0.0);
}

TEST_CASE("axis derivative is exact") {
  Polynomial p = Polynomial::parse("3 2 2\n");
  Polynomial d0 = p.derivative(0);
  Eigen::VectorXd q(2);
  q << 2.0, 5.0;
  CHECK(d0(q) == doctest::Approx(6.0 * 2.0 * 25.0));
  Polynomial dd = d0.derivative(0).derivative(0);
  CHECK(dd(q) == doctest::Approx(0.0));  // d^3/dq1^3 of q1^2 q2^2
}

TEST_CASE("mixed degrees are not homogeneous") {
  Polynomial p = Polynomial::parse("1 2\n1 1\n");
  CHECK(!p.homogeneous_degree().has_value());
  CHECK_THROWS_AS(HomogeneousPotential::from(p), std::invalid_argument);
}

TEST_CASE("homogeneous potential scaling law") {
  HomogeneousPotential v = HomogeneousPotential::load(oracle::data_path("abstract_n1.pot"));
  CHECK(v.degree() == 4);
  CHECK(v.dim() == 2);
  Eigen::VectorXd q(2);
  q << 0.3, -0.8;
  for (double lam : {2.0, 3.0, 7.5})
    CHECK(v(lam * q) == doctest::Approx(std::pow(lam, 4) * v(q)).epsilon(1e-12));
}

TEST_CASE("degree below two is rejected for potentials") {
  CHECK_THROWS_AS(HomogeneousPotential::from(Polynomial::parse("1 1\n")), std::invalid_argument);
  CHECK_NOTHROW(HomogeneousPotential::from(Polynomial::parse("1 2\n")));
}

TEST_CASE("to_string renders the monomials readably") {
  Polynomial p = Polynomial::parse("-1 4 0\n-1 2 2\n");
  CHECK(p.to_string() == "-1*q1^2*q2^2 + -1*q1^4");  // terms sorted by exponents
  CHECK(Polynomial::parse("3 1\n").to_string() == "3*q1");
  CHECK(Polynomial::parse("0 1\n").to_string() == "0");
}
