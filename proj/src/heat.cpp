#include "nilhom/heat.hpp"

#include <cmath>

#include "nilhom/cc_distance.hpp"
#include "nilhom/errors.hpp"

namespace nilhom {

namespace {

constexpr long kDenseLimit = 4096;

Eigen::VectorXcd evolve_dense(const DiscreteForm& form, const Eigen::VectorXcd& f0, double t) {
  const EigSys& sys = form.eigensystem(kDenseLimit);
  Eigen::VectorXcd y = sys.vectors.adjoint() * f0;
  for (long k = 0; k < y.size(); ++k) y[k] *= std::exp(-t * sys.values[k]);
  return sys.vectors * y;
}

// One Lanczos pass; returns false if the Krylov space saturated without
// passing the tolerance check.
bool lanczos_step(const DiscreteForm& form, const Eigen::VectorXcd& f0, double t, double tol,
                  Eigen::VectorXcd& result) {
  const long n = form.size();
  const double beta0 = f0.norm();
  if (beta0 == 0.0 || t == 0.0) {
    result = f0;
    return true;
  }
  const int m_max = static_cast<int>(std::min<long>(n, 140));
  Eigen::MatrixXcd V(n, m_max);
  Eigen::VectorXd alpha(m_max), beta(m_max);
  V.col(0) = f0 / beta0;
  int m = 0;
  Eigen::VectorXcd prev_approx;
  for (int j = 0; j < m_max; ++j) {
    Eigen::VectorXcd w = form.apply(V.col(j));
    alpha[j] = w.dot(V.col(j)).real();
    w -= alpha[j] * V.col(j);
    if (j > 0) w -= beta[j - 1] * V.col(j - 1);
    // full reorthogonalization keeps the small tolerances honest
    for (int r = 0; r <= j; ++r) w -= V.col(r).dot(w) * V.col(r);
    m = j + 1;
    const double b = w.norm();
    // convergence probe every few steps: tridiagonal exponential
    if (m >= 4 && (m % 4 == 0 || b <= 1e-14 * beta0 || m == m_max)) {
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
      for (int k = 0; k < m; ++k) {
        T(k, k) = alpha[k];
        if (k + 1 < m) T(k, k + 1) = T(k + 1, k) = beta[k];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(T);
      Eigen::VectorXd e1 = Eigen::VectorXd::Zero(m);
      e1[0] = 1.0;
      Eigen::VectorXd y = eig.eigenvectors().transpose() * e1;
      for (int k = 0; k < m; ++k) y[k] *= std::exp(-t * eig.eigenvalues()[k]);
      Eigen::VectorXcd approx = beta0 * (V.leftCols(m) * (eig.eigenvectors() * y).cast<std::complex<double>>());
      if (prev_approx.size() > 0 && (approx - prev_approx).norm() <= tol * beta0) {
        result = approx;
        return true;
      }
      prev_approx = approx;
      if (b <= 1e-14 * beta0) {
        result = approx;  // invariant subspace reached; the value is exact
        return true;
      }
    }
    if (j + 1 < m_max) {
      beta[j] = b;
      V.col(j + 1) = w / b;
    }
  }
  result = prev_approx;
  return false;
}

Eigen::VectorXcd evolve_krylov(const DiscreteForm& form, const Eigen::VectorXcd& f0, double t,
                               double tol, int depth = 0) {
  Eigen::VectorXcd out;
  if (lanczos_step(form, f0, t, tol, out)) return out;
  if (depth >= 12) throw SolverError("krylov evolution failed to converge after substepping");
  // halve the step: exp(-tH) = exp(-t/2 H) exp(-t/2 H)
  Eigen::VectorXcd half = evolve_krylov(form, f0, t / 2, tol / 2, depth + 1);
  return evolve_krylov(form, half, t / 2, tol / 2, depth + 1);
}

}  // namespace

Eigen::VectorXcd evolve(const DiscreteForm& form, const Eigen::VectorXcd& f0, double t,
                        ExpMethod method, double tol) {
  if (t < 0) throw ValidationError("evolution time must be nonnegative");
  if (f0.size() != form.size()) throw ValidationError("state size mismatch");
  if (t == 0) return f0;
  if (method == ExpMethod::automatic)
    method = form.size() <= kDenseLimit ? ExpMethod::dense : ExpMethod::krylov;
  return method == ExpMethod::dense ? evolve_dense(form, f0, t)
                                    : evolve_krylov(form, f0, t, tol);
}

Eigen::MatrixXcd kernel(const DiscreteForm& form, double t) {
  const long n = form.size();
  if (n > 16384) throw ValidationError("kernel: grid too large for dense storage");
  if (t < 0) throw ValidationError("kernel time must be nonnegative");
  const double vol = form.node_volume();
  if (n <= kDenseLimit) {
    const EigSys& sys = form.eigensystem(kDenseLimit);
    Eigen::VectorXd decay(n);
    for (long k = 0; k < n; ++k) decay[k] = std::exp(-t * sys.values[k]) / vol;
    return sys.vectors * decay.asDiagonal() * sys.vectors.adjoint();
  }
  Eigen::MatrixXcd K(n, n);
  for (long col = 0; col < n; ++col) {
    Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(n);
    delta[col] = 1.0 / vol;
    K.col(col) = evolve(form, delta, t);
  }
  return K;
}

SemigroupSweep semigroup_convergence(const CoefficientField& c, double t,
                                     const std::function<double(const Eigen::VectorXd&)>& f0,
                                     const std::vector<double>& eps_list, int macro_resolution,
                                     int cell_resolution) {
  if (!(t > 0)) throw ValidationError("semigroup comparison needs t > 0");
  if (c.lattice().kind != LatticeKind::integer_flat)
    throw ValidationError("the eps-sweep runs on flat lattices");
  if (std::abs(c.lattice().scale - 1.0) > 1e-12)
    throw ValidationError("the eps-sweep expects a period-1 base field");
  if (!(c.ellipticity() > 0)) throw ValidationError("field is not strongly elliptic");
  const int d = c.ambient_dim();

  // homogenized matrix from the unit cell
  FundamentalCell unit_cell = fundamental_cell(c.lattice(), std::vector<int>(d, cell_resolution));
  DiscreteForm unit_form = assemble(unit_cell, c);
  Eigen::MatrixXcd chat = homogenized_matrix(unit_form, solve_cell_problem(unit_form));

  // shared macroscopic torus
  FundamentalCell macro =
      fundamental_cell(Lattice::flat(d, 1.0), std::vector<int>(d, macro_resolution));
  FlatTorusGrid grid(macro);
  Eigen::VectorXcd f(grid.num_nodes);
  for (long node = 0; node < grid.num_nodes; ++node) f[node] = f0(grid.coords(node));

  DiscreteForm hat_form = assemble(macro, CoefficientField::constant(Lattice::flat(d, 1.0), chat));
  Eigen::VectorXcd hat_f = evolve(hat_form, f, t);

  SemigroupSweep sweep;
  sweep.chat = chat;
  const double vol = hat_form.node_volume();
  for (double eps : eps_list) {
    if (!(eps > 0)) throw ValidationError("eps must be positive");
    const double cells = 1.0 / eps;
    if (std::abs(cells - std::round(cells)) > 1e-9)
      throw ValidationError("eps must divide the macroscopic period");
    if (macro_resolution * eps < 8 - 1e-9)
      throw ValidationError("grid must resolve eps with at least 8 nodes per cell");
    DiscreteForm eps_form = assemble(macro, scale_epsilon(c, eps));
    Eigen::VectorXcd eps_f = evolve(eps_form, f, t);
    sweep.eps.push_back(eps);
    sweep.errors.push_back(std::sqrt(vol) * (eps_f - hat_f).norm());
  }
  for (std::size_t k = 1; k < sweep.errors.size(); ++k)
    sweep.ratios.push_back(sweep.errors[k] / sweep.errors[k - 1]);
  return sweep;
}

KernelDiagnostics kernel_comparison(const CoefficientField& c, const Eigen::MatrixXcd& chat,
                                    const std::vector<double>& t_list, double a, int periods,
                                    int nodes_per_period, int homogeneous_dim) {
  if (c.lattice().kind != LatticeKind::integer_flat)
    throw ValidationError("kernel comparison runs on flat lattices");
  const int d = c.ambient_dim();
  Lattice big = Lattice::flat(d, static_cast<double>(periods));
  FundamentalCell cell = fundamental_cell(big, std::vector<int>(d, periods * nodes_per_period));

  // the base field is period-1, hence periodic for the larger torus as well
  CoefficientField c_big = CoefficientField::from_sampler(
      big, c.d1(), [c](const Eigen::VectorXd& x) { return c(x); });
  DiscreteForm form = assemble(cell, c_big);
  DiscreteForm hat_form = assemble(cell, CoefficientField::constant(big, chat));

  Eigen::VectorXd dist = cc_distance(c_big, cell, 0);
  const double vol = form.node_volume();

  KernelDiagnostics table;
  for (double t : t_list) {
    Eigen::MatrixXcd diff = kernel(form, t) - kernel(hat_form, t);
    Eigen::MatrixXd abs_diff = diff.cwiseAbs();
    const double scale = std::pow(t, homogeneous_dim / 2.0);

    double sup_region = 0.0;
    for (long x = 0; x < abs_diff.rows(); ++x) {
      const double dx2 = dist[x] * dist[x];
      if (dx2 > a * t) continue;
      for (long y = 0; y < abs_diff.cols(); ++y) {
        if (dx2 + dist[y] * dist[y] <= a * t) sup_region = std::max(sup_region, abs_diff(x, y));
      }
    }
    table.t.push_back(t);
    table.sup_region_scaled.push_back(scale * sup_region);
    table.norm_inf.push_back(abs_diff.maxCoeff());
    table.norm_1.push_back(abs_diff.rowwise().sum().maxCoeff() * vol);
  }
  return table;
}

}  // namespace nilhom
