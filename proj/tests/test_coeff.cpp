#include <cmath>

#include "doctest.h"
#include "nilhom/coefficient_field.hpp"
#include "nilhom/errors.hpp"
#include "nilhom/fundamental_cell.hpp"
#include "oracles.hpp"

using namespace nilhom;

namespace {

CoefficientField sin_field_1d() {
  return CoefficientField::from_expressions(Lattice::flat(1),
                                            {{Expression::parse("2 + sin(2*pi*x)", 1)}});
}

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}

Eigen::VectorXd vec3(double x, double y, double z) {
  Eigen::VectorXd v(3);
  v << x, y, z;
  return v;
}

}  // namespace

TEST_CASE("expression grammar: arithmetic, trig, piecewise, comparisons") {
  auto e = Expression::parse("2 + sin(2*pi*x)", 1);
  CHECK(e(vec1(0.25).data()) == doctest::Approx(3.0));
  CHECK(e(vec1(0.75).data()) == doctest::Approx(1.0));

  auto lam = Expression::parse("piecewise(x < 0.5, 1, 4)", 1);
  CHECK(lam(vec1(0.2).data()) == 1.0);
  CHECK(lam(vec1(0.5).data()) == 4.0);
  CHECK(lam(vec1(0.7).data()) == 4.0);

  auto powers = Expression::parse("-x^2/2 + (1 - x)*3", 1);
  CHECK(powers(vec1(2.0).data()) == doctest::Approx(-5.0));

  auto twod = Expression::parse("cos(2*pi*x)*sin(2*pi*y)", 2);
  std::vector<double> p{0.5, 0.25};
  CHECK(twod(p) == doctest::Approx(-1.0));

  CHECK_THROWS_AS(Expression::parse("2 +", 1), ConfigError);
  CHECK_THROWS_AS(Expression::parse("tan(x)", 1), ConfigError);
  CHECK_THROWS_AS(Expression::parse("y", 1), ConfigError);  // beyond dimension
}

TEST_CASE("ellipticity: identity, sine profile, indefinite sample") {
  auto id = CoefficientField::constant(Lattice::flat(2), Eigen::MatrixXcd::Identity(2, 2));
  CHECK(id.ellipticity() == doctest::Approx(1.0));

  CHECK(sin_field_1d().ellipticity(4096) == doctest::Approx(1.0).epsilon(1e-6));

  auto indefinite = CoefficientField::from_expressions(
      Lattice::flat(1), {{Expression::parse("sin(2*pi*x)", 1)}});
  CHECK(indefinite.ellipticity() < 0);

  auto non_hermitian = CoefficientField::from_sampler(
      Lattice::flat(1), 2, [](const Eigen::VectorXd&) {
        Eigen::MatrixXcd m(2, 2);
        m << 1.0, 2.0, 3.0, 1.0;
        return m;
      });
  CHECK_THROWS_AS(non_hermitian.ellipticity(), ValidationError);
}

TEST_CASE("field validation checks lattice periodicity") {
  CHECK_NOTHROW(sin_field_1d().validate());
  auto aperiodic = CoefficientField::from_sampler(
      Lattice::flat(1), 1, [](const Eigen::VectorXd& x) {
        Eigen::MatrixXcd m(1, 1);
        m(0, 0) = 2.0 + x[0];
        return m;
      });
  CHECK_THROWS_AS(aperiodic.validate(), ValidationError);

  // heisenberg-periodic field built from the cell reduction is accepted
  auto heis = CoefficientField::from_sampler(
      Lattice::heis(), 2, [](const Eigen::VectorXd& x) {
        FundamentalCell cell{Lattice::heis(), {4, 4, 4}};
        Eigen::VectorXd r = cell.reduce(x);
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
        m(0, 0) = 2.0 + std::cos(2 * M_PI * r[0]);
        m(1, 1) = 2.0 + std::sin(2 * M_PI * r[1]) * std::cos(2 * M_PI * r[0]);
        return m;
      });
  CHECK_NOTHROW(heis.validate());
}

TEST_CASE("scale_epsilon: identity at 1, period shrinks, dilation weights, composition") {
  auto c = sin_field_1d();
  auto same = scale_epsilon(c, 1.0);
  for (double x : {0.0, 0.3, 0.77}) {
    CHECK(same(vec1(x))(0, 0).real() == doctest::Approx(c(vec1(x))(0, 0).real()).epsilon(1e-14));
  }

  // eps = 1/2: the scaled field has period 1/2
  auto half = scale_epsilon(c, 0.5);
  CHECK(half.lattice().scale == doctest::Approx(0.5));
  for (double x : {0.05, 0.21, 0.4}) {
    CHECK(half(vec1(x + 0.5))(0, 0).real() ==
          doctest::Approx(half(vec1(x))(0, 0).real()).epsilon(1e-12));
    CHECK(half(vec1(x))(0, 0).real() == doctest::Approx(c(vec1(2 * x))(0, 0).real()));
  }

  // heisenberg: z rescales with weight 2
  auto heis = CoefficientField::from_sampler(
      Lattice::heis(), 2, [](const Eigen::VectorXd& x) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
        m(0, 0) = 2.0 + std::sin(2 * M_PI * x[2]);
        return m;
      });
  auto heis_half = scale_epsilon(heis, 0.5);
  CHECK(heis_half.lattice().scale == doctest::Approx(0.5));
  CHECK(heis_half(vec3(0.1, 0.2, 0.05))(0, 0).real() ==
        doctest::Approx(heis(vec3(0.2, 0.4, 0.2))(0, 0).real()));

  // composition law, pointwise
  auto ab = scale_epsilon(scale_epsilon(c, 0.5), 0.25);
  auto direct = scale_epsilon(c, 0.125);
  for (double x : {0.013, 0.66, 0.92}) {
    CHECK(std::abs(ab(vec1(x))(0, 0) - direct(vec1(x))(0, 0)) < 1e-12);
  }

  CHECK_THROWS_AS(scale_epsilon(c, 0.0), ValidationError);
  CHECK_THROWS_AS(scale_epsilon(c, -2.0), ValidationError);
}

TEST_CASE("mollify: constants fixed, mean preserved, contraction rate, mu bound") {
  auto tau = polynomial_bump(1);

  Eigen::MatrixXcd value(1, 1);
  value(0, 0) = 3.5;
  auto constant = CoefficientField::constant(Lattice::flat(1), value);
  auto smoothed = mollify(constant, 8, tau, 256);
  for (double x : {0.1, 0.5, 0.9}) {
    CHECK(smoothed(vec1(x))(0, 0).real() == doctest::Approx(3.5).epsilon(1e-14));
  }

  auto c = sin_field_1d();
  const int res = 2048;
  auto m8 = mollify(c, 8, tau, res);
  auto m16 = mollify(c, 16, tau, res);

  // cell average is preserved (discrete convolution is doubly stochastic)
  auto grid_mean = [res](const CoefficientField& f) {
    double acc = 0.0;
    for (int k = 0; k < res; ++k) {
      Eigen::VectorXd x(1);
      x << (k + 0.5) / res;
      acc += f(x)(0, 0).real();
    }
    return acc / res;
  };
  CHECK(grid_mean(m8) == doctest::Approx(grid_mean(c)).epsilon(1e-10));

  // n doubling at least halves the sup distance for this smooth profile
  auto sup_dist = [res, &c](const CoefficientField& f) {
    double acc = 0.0;
    for (int k = 0; k < res; ++k) {
      Eigen::VectorXd x(1);
      x << (k + 0.5) / res;
      acc = std::max(acc, std::abs(f(x)(0, 0).real() - c(x)(0, 0).real()));
    }
    return acc;
  };
  const double d8 = sup_dist(m8), d16 = sup_dist(m16);
  CHECK(d16 <= 0.6 * d8);

  // mollification never drops the ellipticity below mu(c)
  CHECK(m8.ellipticity() >= c.ellipticity(4096) - 1e-10);

  // invalid kernels are rejected
  Mollifier negative{1, [](double t) { return std::abs(t) < 0.5 ? std::cos(8 * t) : 0.0; }};
  CHECK_THROWS_AS(mollify(c, 8, negative, 256), ValidationError);
  Mollifier wrong_mass{1, [](double t) { return std::abs(t) < 0.5 ? 2.0 : 0.0; }};
  CHECK_THROWS_AS(mollify(c, 8, wrong_mass, 256), ValidationError);
}

TEST_CASE("fundamental cell: unit square with standard wraparound") {
  auto cell = fundamental_cell(Lattice::flat(2), {8, 8});
  Eigen::VectorXd p(2);
  p << 3.7, -1.2;
  std::vector<long> word;
  Eigen::VectorXd r = cell.reduce(p, &word);
  CHECK(r[0] == doctest::Approx(0.7));
  CHECK(r[1] == doctest::Approx(0.8));
  CHECK(word == std::vector<long>{-3, 2});
}

TEST_CASE("fundamental cell: heisenberg identifications") {
  auto cell = fundamental_cell(Lattice::heis(), {8, 8, 8});

  // (x+1, y, z) ~ (x, y, z)
  CHECK(cell.reduce(vec3(1.25, 0.5, 0.3)).isApprox(vec3(0.25, 0.5, 0.3), 1e-12));
  // (x, y+1, z+x) ~ (x, y, z)
  CHECK(cell.reduce(vec3(0.25, 1.5, 0.55)).isApprox(vec3(0.25, 0.5, 0.3), 1e-12));
  // (x, y, z+1) ~ (x, y, z)
  CHECK(cell.reduce(vec3(0.25, 0.5, 1.3)).isApprox(vec3(0.25, 0.5, 0.3), 1e-12));

  // overlap of distinct translates: zero hits on a large random cloud
  std::mt19937_64 rng(71);
  CHECK_NOTHROW(cell.check_tiling(10000, rng));
}

TEST_CASE("grid fields: save / load round trip and nearest-cell evaluation") {
  std::vector<Eigen::MatrixXcd> cells;
  for (int k = 0; k < 8; ++k) {
    Eigen::MatrixXcd m(2, 2);
    m << 2.0 + k * 0.1, std::complex<double>(0.1, 0.05), std::complex<double>(0.1, -0.05), 3.0;
    cells.push_back(m);
  }
  auto grid = CoefficientField::from_grid(Lattice::flat(1), 2, {8}, cells);
  CHECK(grid(vec1(0.3))(0, 0).real() == doctest::Approx(2.2));
  CHECK(grid(vec1(-0.7))(0, 0).real() == doctest::Approx(2.2));  // periodic wrap

  grid.save("/tmp/nilhom_field.json");
  auto loaded = CoefficientField::load("/tmp/nilhom_field.json");
  CHECK(loaded.d1() == 2);
  for (double x : {0.05, 0.55, 0.95}) {
    CHECK(std::abs(loaded(vec1(x))(0, 1) - grid(vec1(x))(0, 1)) == 0.0);
  }

  CHECK_THROWS_AS(CoefficientField::load("/tmp/nilhom_missing_file.json"), ConfigError);
}
