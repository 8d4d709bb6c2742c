#include <cmath>
#include <random>

#include "doctest.h"
#include "nilhom/cell_problem.hpp"
#include "nilhom/discrete_form.hpp"
#include "nilhom/errors.hpp"
#include "oracles.hpp"

using namespace nilhom;

namespace {

CoefficientField sin_field_1d() {
  return CoefficientField::from_expressions(Lattice::flat(1),
                                            {{Expression::parse("2 + sin(2*pi*x)", 1)}});
}

CoefficientField test_field_2d() {
  return CoefficientField::from_expressions(
      Lattice::flat(2),
      {{Expression::parse("2 + sin(2*pi*x)", 2), Expression::parse("0.5*sin(2*pi*x)*sin(2*pi*y)", 2)},
       {Expression::parse("0.5*sin(2*pi*x)*sin(2*pi*y)", 2), Expression::parse("2 + cos(2*pi*y)", 2)}});
}

std::vector<Eigen::VectorXcd> random_competitors(const DiscreteForm& form, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXcd> g(form.d1());
  for (auto& gi : g) {
    gi.resize(form.size());
    for (long k = 0; k < form.size(); ++k) gi[k] = gauss(rng);
    gi.array() -= gi.mean();
  }
  return g;
}

}  // namespace

TEST_CASE("assemble: constant coefficients give the standard second-difference matrix") {
  auto cell = fundamental_cell(Lattice::flat(1), {32});
  auto one = CoefficientField::constant(Lattice::flat(1), Eigen::MatrixXcd::Identity(1, 1));
  auto form = assemble(cell, one);

  const double h = 1.0 / 32;
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(32);
  u[7] = 1.0;
  Eigen::VectorXcd hu = form.apply(u);
  CHECK(hu[7].real() == doctest::Approx(2.0 / (h * h)));
  CHECK(hu[6].real() == doctest::Approx(-1.0 / (h * h)));
  CHECK(hu[8].real() == doctest::Approx(-1.0 / (h * h)));

  // constants are in the kernel
  Eigen::VectorXcd ones = Eigen::VectorXcd::Constant(32, 1.0);
  CHECK(form.apply(ones).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("assemble: matrix action matches the dense divergence-stencil oracle to 1e-12") {
  const int n = 32;
  const double h = 1.0 / n;
  auto cell = fundamental_cell(Lattice::flat(1), {n});
  auto c = sin_field_1d();
  auto form = assemble(cell, c);

  std::vector<double> c_edge(n);
  for (int k = 0; k < n; ++k) c_edge[k] = 2.0 + std::sin(2 * M_PI * (k + 0.5) / n);

  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> u(n);
    for (auto& v : u) v = gauss(rng);
    Eigen::VectorXcd uc(n);
    for (int k = 0; k < n; ++k) uc[k] = u[k];
    Eigen::VectorXcd hu = form.apply(uc);
    auto expected = oracle::divergence_stencil_1d(c_edge, u, h);
    for (int k = 0; k < n; ++k) {
      CHECK(hu[k].real() == doctest::Approx(expected[k]).epsilon(1e-12));
      CHECK(hu[k].imag() == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("assemble rejects non-elliptic fields and tiny grids") {
  auto cell = fundamental_cell(Lattice::flat(1), {32});
  auto indefinite = CoefficientField::from_expressions(
      Lattice::flat(1), {{Expression::parse("sin(2*pi*x)", 1)}});
  CHECK_THROWS_AS(assemble(cell, indefinite), ValidationError);

  auto tiny = fundamental_cell(Lattice::flat(1), {3});
  CHECK_THROWS_AS(assemble(tiny, sin_field_1d()), ValidationError);
}

TEST_CASE("cell problem: constant coefficients give vanishing correctors") {
  auto cell = fundamental_cell(Lattice::flat(2), {16, 16});
  Eigen::MatrixXcd value(2, 2);
  value << 2.0, std::complex<double>(0.3, 0.2), std::complex<double>(0.3, -0.2), 1.5;
  auto c = CoefficientField::constant(Lattice::flat(2), value);
  auto form = assemble(cell, c);
  auto correctors = solve_cell_problem(form);
  for (const auto& chi : correctors.chi) CHECK(chi.norm() == doctest::Approx(0.0).epsilon(1e-14));

  auto chat = homogenized_matrix(form, correctors);
  CHECK((chat - value).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("cell problem: 1d corrector slope matches chat/c - 1 to 1e-8") {
  const int n = 512;
  auto cell = fundamental_cell(Lattice::flat(1), {n});
  auto c = sin_field_1d();
  auto form = assemble(cell, c);
  auto correctors = solve_cell_problem(form);
  auto chat = homogenized_matrix(form, correctors);
  const double chat_val = chat(0, 0).real();

  // slopes at the edge midpoints where the scheme samples c
  Eigen::VectorXcd slope = form.derivative(0) * correctors.chi[0];
  for (int k = 0; k < n; k += 17) {
    Eigen::VectorXd mid(1);
    mid << (k + 0.5) / n;
    double expected = chat_val / (2.0 + std::sin(2 * M_PI * mid[0])) - 1.0;
    CHECK(slope[k].real() == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("cell problem: corrector energy beats 20 random periodic competitors") {
  auto cell = fundamental_cell(Lattice::flat(1), {64});
  auto form = assemble(cell, sin_field_1d());
  auto correctors = solve_cell_problem(form);
  auto chat = homogenized_matrix(form, correctors);

  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_competitors(form, rng);
    auto cg = competitor_matrix(form, g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(cg - chat, Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("homogenized matrix: harmonic mean in 1d against the quadrature oracle") {
  auto profile = [](double x) { return 2.0 + std::sin(2 * M_PI * x); };
  const double expected = oracle::harmonic_mean(profile);
  // sqrt(3) is the closed form of (int dx / (2 + sin 2 pi x))^-1
  CHECK(expected == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));

  auto cell = fundamental_cell(Lattice::flat(1), {256});
  auto form = assemble(cell, sin_field_1d());
  auto chat = homogenized_matrix(form, solve_cell_problem(form));
  CHECK(chat(0, 0).real() == doctest::Approx(expected).epsilon(1e-8));
  CHECK(chat(0, 0).imag() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("homogenized matrix: 2d laminate equals diag(harmonic, arithmetic)") {
  auto laminate = CoefficientField::from_expressions(
      Lattice::flat(2),
      {{Expression::parse("piecewise(x < 0.5, 1, 4)", 2), Expression::parse("0", 2)},
       {Expression::parse("0", 2), Expression::parse("piecewise(x < 0.5, 1, 4)", 2)}});
  auto cell = fundamental_cell(Lattice::flat(2), {64, 64});
  auto form = assemble(cell, laminate);
  auto chat = homogenized_matrix(form, solve_cell_problem(form));

  const double a = 1.0, b = 4.0;
  CHECK(chat(0, 0).real() == doctest::Approx(2 * a * b / (a + b)).epsilon(1e-8));
  CHECK(chat(1, 1).real() == doctest::Approx((a + b) / 2).epsilon(1e-8));
  CHECK(std::abs(chat(0, 1)) < 1e-10);
}

TEST_CASE("homogenized matrix: hermitian, sandwiched between mu I and the cell average") {
  auto cell = fundamental_cell(Lattice::flat(2), {48, 48});
  auto c = test_field_2d();
  auto form = assemble(cell, c);
  auto correctors = solve_cell_problem(form);
  auto chat = homogenized_matrix(form, correctors);

  CHECK((chat - chat.adjoint()).cwiseAbs().maxCoeff() == 0.0);  // symmetrized accumulation

  // cell average of c over the sample points of the form
  Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      avg(i, j) = form.coefficient_diag(i, j).mean();
    }
  }
  const double mu = c.ellipticity(256);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> low(
      chat - mu * Eigen::MatrixXcd::Identity(2, 2), Eigen::EigenvaluesOnly);
  CHECK(low.eigenvalues().minCoeff() >= -1e-8);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> high(avg - chat, Eigen::EigenvaluesOnly);
  CHECK(high.eigenvalues().minCoeff() >= -1e-8);
}

TEST_CASE("psd-order optimality on the 2d test field") {
  auto cell = fundamental_cell(Lattice::flat(2), {32, 32});
  auto form = assemble(cell, test_field_2d());
  auto chat = homogenized_matrix(form, solve_cell_problem(form));

  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_competitors(form, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(competitor_matrix(form, g) - chat,
                                                        Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("grid refinement changes chat at second order for smooth fields") {
  auto c = test_field_2d();
  auto chat_at = [&](int n) {
    auto cell = fundamental_cell(Lattice::flat(2), {n, n});
    auto form = assemble(cell, c);
    return homogenized_matrix(form, solve_cell_problem(form));
  };
  const double d1 = (chat_at(16) - chat_at(32)).cwiseAbs().maxCoeff();
  const double d2 = (chat_at(32) - chat_at(64)).cwiseAbs().maxCoeff();
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.5));
}
