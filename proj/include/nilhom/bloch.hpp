#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nilhom/coefficient_field.hpp"

namespace nilhom {

/// One quasimomentum fiber of the periodic operator: the Fourier-Galerkin
/// matrix H(theta)[m,n] = sum_ij (2 pi m_i + theta_i) chat_ij(m-n)
/// (2 pi n_j + theta_j) over a centered mode box, hermitian by
/// construction, eigenvalues ascending.
struct BlochFiber {
  Eigen::VectorXd theta;
  Eigen::MatrixXcd matrix;
  Eigen::VectorXd eigenvalues;
};

/// Shares the Fourier coefficients of c across fibers.
class FiberFactory {
 public:
  /// resolution = Fourier modes per axis (centered box).
  FiberFactory(const CoefficientField& c, int resolution);

  BlochFiber fiber(const Eigen::VectorXd& theta) const;
  const std::vector<Eigen::VectorXi>& modes() const { return modes_; }
  /// chat_ij(q) for q in the difference box.
  const Eigen::MatrixXcd& coefficient(const Eigen::VectorXi& q) const;
  int dim() const { return d_; }
  int resolution() const { return res_; }

 private:
  int d_ = 0, d1_ = 0, res_ = 0;
  std::vector<Eigen::VectorXi> modes_;
  std::vector<Eigen::MatrixXcd> qtable_;
  long qindex(const Eigen::VectorXi& q) const;
};

BlochFiber fiber_operator(const CoefficientField& c, const Eigen::VectorXd& theta,
                          int resolution);

struct BandTable {
  std::vector<Eigen::VectorXd> thetas;
  Eigen::MatrixXd bands;  // row per theta, n_max ascending eigenvalues
};

BandTable band_structure(const CoefficientField& c, const std::vector<Eigen::VectorXd>& path,
                         int n_max, int resolution);

/// Sorted first M of { <(2 pi n - theta) | Chat (2 pi n - theta)> : n in Z^d },
/// enumerated over a box grown until the head of the list is stable.
std::vector<double> homogenized_limit_set(const Eigen::MatrixXcd& chat,
                                          const Eigen::VectorXd& theta, int M);

struct RefinementResult {
  std::vector<double> folded;  // sorted first M of { N^2 lambda_n(w) : w^N = z }
  std::vector<double> limit;   // sorted first M of the homogenized limit set
  double max_relative_gap = 0.0;
};

/// Theorem-style refinement: z = exp(i theta); the N^d roots w of w^N = z
/// are the fibers at (theta + 2 pi m)/N.
RefinementResult spectral_refinement(const CoefficientField& c, const Eigen::VectorXd& theta,
                                     int N, int M, const Eigen::MatrixXcd& chat,
                                     int fiber_resolution);

}  // namespace nilhom
