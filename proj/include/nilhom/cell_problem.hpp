#pragma once

#include "nilhom/discrete_form.hpp"

namespace nilhom {

struct CgOptions {
  double tol = 1e-10;  // relative residual
  int max_iter = 50000;
};

/// Periodic corrector parts chi_i of the minimizers; each has cell mean
/// zero and the corrected gradients are D_k chi_i + delta_ki.
struct CorrectorSet {
  std::vector<Eigen::VectorXcd> chi;
  std::vector<double> residual;
};

/// Hermitian PCG (Jacobi) in the mean-zero subspace; throws SolverError
/// with the reached residual on non-convergence.
Eigen::VectorXcd solve_mean_zero(const DiscreteForm& form, const Eigen::VectorXcd& rhs,
                                 const CgOptions& opt = {});

/// One Euler-Lagrange solve per direction,  H chi_i = -sum_k D_k^H c_ki 1.
CorrectorSet solve_cell_problem(const DiscreteForm& form, const CgOptions& opt = {});

/// Chat_ij = vol sum_x sum_kl conj(D_k chi_i + delta_ki) c_kl (D_l chi_j + delta_lj);
/// hermitian positive definite.
Eigen::MatrixXcd homogenized_matrix(const DiscreteForm& form, const CorrectorSet& correctors);

/// C(g)_ij = h(g_i - y_i, g_j - y_j) for a periodic competitor tuple; the
/// y_i enter through their constant unit derivatives.
Eigen::MatrixXcd competitor_matrix(const DiscreteForm& form,
                                   const std::vector<Eigen::VectorXcd>& g);

}  // namespace nilhom
