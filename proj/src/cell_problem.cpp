#include "nilhom/cell_problem.hpp"

#include "nilhom/errors.hpp"

namespace nilhom {

namespace {

void project_mean(Eigen::VectorXcd& v) {
  v.array() -= v.mean();
}

}  // namespace

Eigen::VectorXcd solve_mean_zero(const DiscreteForm& form, const Eigen::VectorXcd& rhs,
                                 const CgOptions& opt) {
  const long n = form.size();
  Eigen::VectorXcd b = rhs;
  project_mean(b);
  const double bnorm = b.norm();
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
  if (bnorm == 0.0) return x;

  Eigen::VectorXd jacobi = form.matrix().diagonal().real();
  for (long k = 0; k < n; ++k) jacobi[k] = jacobi[k] > 0 ? 1.0 / jacobi[k] : 1.0;

  Eigen::VectorXcd r = b;
  Eigen::VectorXcd z = jacobi.asDiagonal() * r;
  project_mean(z);
  Eigen::VectorXcd p = z;
  double rz = r.dot(z).real();
  for (int it = 0; it < opt.max_iter; ++it) {
    Eigen::VectorXcd q = form.apply(p);
    double pq = p.dot(q).real();
    if (!(pq > 0)) throw SolverError("cg: operator lost positivity on the mean-zero subspace");
    const double alpha = rz / pq;
    x += alpha * p;
    r -= alpha * q;
    project_mean(x);
    project_mean(r);
    if (r.norm() <= opt.tol * bnorm) return x;
    z = jacobi.asDiagonal() * r;
    project_mean(z);
    const double rz_next = r.dot(z).real();
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  throw SolverError("cg: no convergence within " + std::to_string(opt.max_iter) +
                    " iterations, residual " + std::to_string(r.norm() / bnorm));
}

CorrectorSet solve_cell_problem(const DiscreteForm& form, const CgOptions& opt) {
  const int d1 = form.d1();
  CorrectorSet out;
  out.chi.reserve(d1);
  out.residual.reserve(d1);
  for (int i = 0; i < d1; ++i) {
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(form.size());
    for (int k = 0; k < d1; ++k) {
      rhs -= form.derivative(k).adjoint() * form.coefficient_diag(k, i);
    }
    Eigen::VectorXcd chi = solve_mean_zero(form, rhs, opt);
    double denom = std::max(rhs.norm(), 1e-300);
    out.residual.push_back((form.apply(chi) - rhs).norm() / denom);
    out.chi.push_back(std::move(chi));
  }
  return out;
}

Eigen::MatrixXcd homogenized_matrix(const DiscreteForm& form, const CorrectorSet& correctors) {
  return form.energy_matrix(correctors.chi, +1.0);
}

Eigen::MatrixXcd competitor_matrix(const DiscreteForm& form,
                                   const std::vector<Eigen::VectorXcd>& g) {
  return form.energy_matrix(g, -1.0);
}

}  // namespace nilhom
