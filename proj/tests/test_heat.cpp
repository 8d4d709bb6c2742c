#include <cmath>
#include <random>

#include "doctest.h"
#include "nilhom/cc_distance.hpp"
#include "nilhom/errors.hpp"
#include "nilhom/heat.hpp"
#include "oracles.hpp"

using namespace nilhom;

namespace {

CoefficientField sin_field_1d() {
  return CoefficientField::from_expressions(Lattice::flat(1),
                                            {{Expression::parse("2 + sin(2*pi*x)", 1)}});
}

DiscreteForm sin_form_1d(int n) {
  auto cell = fundamental_cell(Lattice::flat(1), {n});
  return assemble(cell, sin_field_1d());
}

Eigen::VectorXcd smooth_state(const DiscreteForm& form) {
  const long n = form.size();
  Eigen::VectorXcd f(n);
  for (long k = 0; k < n; ++k) {
    double x = static_cast<double>(k) / n;
    f[k] = std::cos(2 * M_PI * x) + 0.5 * std::sin(4 * M_PI * x) + 0.2;
  }
  return f;
}

}  // namespace

TEST_CASE("evolve: t = 0 is the identity and t < 0 is rejected") {
  auto form = sin_form_1d(64);
  auto f = smooth_state(form);
  CHECK((evolve(form, f, 0.0) - f).norm() == 0.0);
  CHECK_THROWS_AS(evolve(form, f, -0.1), ValidationError);
}

TEST_CASE("evolve conserves mass and contracts the L2 norm") {
  auto form = sin_form_1d(128);
  auto f = smooth_state(form);
  auto g = evolve(form, f, 0.37);
  CHECK(std::abs(g.sum() - f.sum()) / std::abs(f.sum()) < 1e-10);
  CHECK(g.norm() <= f.norm() * (1 + 1e-12));
}

TEST_CASE("evolve preserves nonnegativity of delta data") {
  auto form = sin_form_1d(64);
  Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(64);
  delta[10] = 64.0;
  auto g = evolve(form, delta, 0.05);
  CHECK(g.real().minCoeff() >= -1e-9);
  CHECK(g.imag().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("krylov evolution agrees with the dense path to 1e-8") {
  auto form = sin_form_1d(512);
  auto f = smooth_state(form);
  for (double t : {0.01, 0.1, 1.0}) {
    auto dense = evolve(form, f, t, ExpMethod::dense);
    auto krylov = evolve(form, f, t, ExpMethod::krylov);
    CHECK((dense - krylov).norm() / f.norm() < 1e-8);
  }

  // delta data exercises the substepped branch
  Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(512);
  delta[0] = 512.0;
  auto dense = evolve(form, delta, 0.02, ExpMethod::dense);
  auto krylov = evolve(form, delta, 0.02, ExpMethod::krylov);
  CHECK((dense - krylov).norm() / delta.norm() < 1e-8);
}

TEST_CASE("semigroup property and self-adjointness") {
  auto form = sin_form_1d(96);
  auto f = smooth_state(form);
  auto two_step = evolve(form, evolve(form, f, 0.07), 0.05);
  auto one_step = evolve(form, f, 0.12);
  CHECK((two_step - one_step).norm() / f.norm() < 1e-8);

  std::mt19937_64 rng(4);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd g(form.size());
  for (long k = 0; k < form.size(); ++k) g[k] = gauss(rng);
  auto sf = evolve(form, f, 0.3);
  auto sg = evolve(form, g, 0.3);
  CHECK(std::abs(sf.dot(g) - f.dot(sg)) / (f.norm() * g.norm()) < 1e-9);
}

TEST_CASE("kernel: symmetry, stochastic rows, wrapped gaussian for constant c") {
  auto form = sin_form_1d(128);
  auto K = kernel(form, 0.2);
  CHECK((K - K.transpose()).cwiseAbs().maxCoeff() < 1e-9);

  const double vol = form.node_volume();
  for (long x = 0; x < K.rows(); x += 31) {
    CHECK(std::abs(K.row(x).sum() * vol - 1.0) < 1e-8);
  }

  // constant coefficient: the kernel is the wrapped gaussian
  auto cell = fundamental_cell(Lattice::flat(1), {256});
  Eigen::MatrixXcd cmat(1, 1);
  cmat(0, 0) = std::sqrt(3.0);
  auto const_form = assemble(cell, CoefficientField::constant(Lattice::flat(1), cmat));
  const double t = 0.05;
  auto Kc = kernel(const_form, t);
  for (long x = 0; x < 256; x += 37) {
    for (long y = 0; y < 256; y += 41) {
      double expected = oracle::wrapped_gaussian(x / 256.0, y / 256.0, t, std::sqrt(3.0), 1.0);
      CHECK(Kc(x, y).real() == doctest::Approx(expected).epsilon(1e-6));
    }
  }

  CHECK_THROWS_AS(kernel(form, -1.0), ValidationError);
}

TEST_CASE("semigroup convergence: constant field collapses to solver noise") {
  Eigen::MatrixXcd cmat(1, 1);
  cmat(0, 0) = 1.7;
  auto c = CoefficientField::constant(Lattice::flat(1), cmat);
  auto sweep = semigroup_convergence(
      c, 0.1, [](const Eigen::VectorXd& x) { return std::cos(2 * M_PI * x[0]); },
      {1.0, 0.5, 0.25}, 128, 128);
  for (double err : sweep.errors) CHECK(err < 1e-8);
}

TEST_CASE("semigroup convergence: sine field errors decrease strictly") {
  auto sweep = semigroup_convergence(
      sin_field_1d(), 0.1, [](const Eigen::VectorXd& x) { return std::cos(2 * M_PI * x[0]); },
      {1.0, 0.5, 0.25, 0.125}, 256, 256);
  REQUIRE(sweep.errors.size() == 4);
  CHECK(sweep.chat(0, 0).real() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
  for (std::size_t k = 1; k < sweep.errors.size(); ++k) {
    CHECK(sweep.errors[k] < sweep.errors[k - 1]);
  }
  CHECK(sweep.errors.back() / sweep.errors.front() < 0.25);

  CHECK_THROWS_AS(semigroup_convergence(
                      sin_field_1d(), 0.1,
                      [](const Eigen::VectorXd& x) { return x[0]; }, {0.3}, 256, 64),
                  ValidationError);  // eps must divide the torus
}

TEST_CASE("cc distance: flat identity metric is the wrapped distance") {
  auto c = CoefficientField::constant(Lattice::flat(1), Eigen::MatrixXcd::Identity(1, 1));
  auto cell = fundamental_cell(Lattice::flat(1), {64});
  auto dist = cc_distance(c, cell, 0);
  for (int k = 0; k < 64; ++k) {
    double x = k / 64.0;
    double wrapped = std::min(x, 1.0 - x);
    CHECK(std::abs(dist[k] - wrapped) <= 1.0 / 64 + 1e-12);
  }
}

TEST_CASE("cc distance scales as c^-1/2 and satisfies the triangle inequality") {
  auto c = sin_field_1d();
  auto cell = fundamental_cell(Lattice::flat(1), {128});
  auto d1 = cc_distance(c, cell, 0);

  auto c4 = CoefficientField::from_sampler(Lattice::flat(1), 1, [c](const Eigen::VectorXd& x) {
    return (4.0 * c(x)).eval();
  });
  auto d4 = cc_distance(c4, cell, 0);
  CHECK((d4 * 2.0 - d1).cwiseAbs().maxCoeff() < 1e-10);

  // triangle inequality over sampled sources
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> node(0, 127);
  std::vector<long> sources;
  std::vector<Eigen::VectorXd> fields;
  for (int s = 0; s < 8; ++s) {
    sources.push_back(node(rng));
    fields.push_back(cc_distance(c, cell, sources.back()));
  }
  for (int trial = 0; trial < 1000; ++trial) {
    int ia = trial % 8, ib = (trial / 8) % 8;
    long cc_node = node(rng);
    double dab = fields[ia][sources[ib]];
    double dac = fields[ia][cc_node];
    double dbc = fields[ib][cc_node];
    CHECK(dac <= dab + dbc + 1e-12);
  }
}

TEST_CASE("kernel comparison diagnostics decrease on the large torus") {
  Eigen::MatrixXcd chat(1, 1);
  chat(0, 0) = std::sqrt(3.0);
  auto table = kernel_comparison(sin_field_1d(), chat, {1.0, 2.0, 4.0, 8.0}, 1.0, 64, 16, 1);
  REQUIRE(table.t.size() == 4);
  for (std::size_t k = 1; k < table.t.size(); ++k) {
    const double scale_prev = std::sqrt(table.t[k - 1]);
    const double scale_here = std::sqrt(table.t[k]);
    CHECK(scale_here * table.norm_inf[k] < scale_prev * table.norm_inf[k - 1]);
    CHECK(table.norm_1[k] < table.norm_1[k - 1]);
    CHECK(table.sup_region_scaled[k] < table.sup_region_scaled[k - 1]);
  }

  // constant coefficients: all diagnostics at solver tolerance
  auto const_table = kernel_comparison(
      CoefficientField::constant(Lattice::flat(1), chat), chat, {1.0, 2.0}, 1.0, 16, 8, 1);
  for (double v : const_table.norm_inf) CHECK(v < 1e-9);
  for (double v : const_table.norm_1) CHECK(v < 1e-9);
}
