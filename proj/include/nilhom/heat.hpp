#pragma once

#include <functional>

#include "nilhom/cell_problem.hpp"
#include "nilhom/discrete_form.hpp"

namespace nilhom {

enum class ExpMethod { automatic, dense, krylov };

/// S_t f0 = exp(-t H) f0.  Dense eigensolve below 4096 unknowns, Lanczos
/// above (or on request); both to about 1e-9.
Eigen::VectorXcd evolve(const DiscreteForm& form, const Eigen::VectorXcd& f0, double t,
                        ExpMethod method = ExpMethod::automatic, double tol = 1e-9);

/// Heat kernel matrix, S_t f(x) = sum_y K(x,y) f(y) vol.  Dense storage,
/// guarded at 16384 nodes.
Eigen::MatrixXcd kernel(const DiscreteForm& form, double t);

struct SemigroupSweep {
  std::vector<double> eps;
  std::vector<double> errors;  // ||(S_t^eps - Shat_t) f||_2
  std::vector<double> ratios;  // consecutive error quotients
  Eigen::MatrixXcd chat;
};

/// Theorem-style sweep: the eps-scaled problems share one macroscopic
/// period-1 torus; the reference semigroup is generated by the homogenized
/// matrix.  Every eps must divide 1 with at least 8 grid nodes per cell.
SemigroupSweep semigroup_convergence(const CoefficientField& c, double t,
                                     const std::function<double(const Eigen::VectorXd&)>& f0,
                                     const std::vector<double>& eps_list, int macro_resolution,
                                     int cell_resolution);

struct KernelDiagnostics {
  std::vector<double> t;
  std::vector<double> sup_region_scaled;  // t^(D/2) sup_{|x|^2+|y|^2 <= a t} |K - Khat|
  std::vector<double> norm_inf;           // esssup_{x,y} |K - Khat|
  std::vector<double> norm_1;             // esssup_x int dy |K - Khat|
};

/// Kernel comparison on a torus of `periods` coefficient cells per axis
/// (the large-torus stand-in for the full group); region filter uses the
/// coefficient-adapted distance from the origin node.
KernelDiagnostics kernel_comparison(const CoefficientField& c, const Eigen::MatrixXcd& chat,
                                    const std::vector<double>& t_list, double a, int periods,
                                    int nodes_per_period, int homogeneous_dim);

}  // namespace nilhom
