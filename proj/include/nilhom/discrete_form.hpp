#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <memory>
#include <vector>

#include "nilhom/coefficient_field.hpp"
#include "nilhom/fundamental_cell.hpp"

namespace nilhom {

using SpMat = Eigen::SparseMatrix<std::complex<double>>;

/// Node-centered periodic grid over the coordinate cell; nodes sit at the
/// lower corners iv * h.
struct FlatTorusGrid {
  std::vector<int> n;
  Eigen::VectorXd h;
  long num_nodes = 0;

  explicit FlatTorusGrid(const FundamentalCell& cell);

  long index(const std::vector<int>& iv) const;
  std::vector<int> decode(long node) const;
  long neighbor(long node, int axis, int dir) const;
  Eigen::VectorXd coords(long node) const;
};

/// Discrete derivative operators entering the quadratic form, one per
/// horizontal direction, plus the rule for where to sample c_{ij}.
struct StencilSet {
  int d1 = 0;
  long num_nodes = 0;
  double node_volume = 0.0;
  std::vector<SpMat> D;
  std::function<Eigen::VectorXd(long node, int i, int j)> sample_point;
};

/// Forward differences on the flat torus; c_{ij} is sampled at
/// x + (h_i e_i + h_j e_j) / 2, which keeps the assembled form hermitian.
StencilSet flat_stencils(const FundamentalCell& cell);

/// Dense unitary eigensystem of the assembled operator.
struct EigSys {
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd values;
};

/// The quadratic form h(f,g) = sum_ij <D_i f | c_ij D_j g> realized as a
/// sparse hermitian PSD matrix with constants in its kernel.  The matrix is
/// the operator (no volume weight); energies carry node_volume explicitly.
class DiscreteForm {
 public:
  DiscreteForm(const FundamentalCell& cell, const CoefficientField& c, StencilSet stencils);

  const SpMat& matrix() const { return H_; }
  const SpMat& derivative(int i) const { return stencils_.D[i]; }
  const Eigen::VectorXcd& coefficient_diag(int i, int j) const { return cdiag_[i * d1_ + j]; }
  int d1() const { return d1_; }
  long size() const { return stencils_.num_nodes; }
  double node_volume() const { return stencils_.node_volume; }
  double ellipticity() const { return mu_; }
  const FundamentalCell& cell() const { return cell_; }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return H_ * v; }

  /// Energy matrix of a competitor tuple with derivative shifts:
  ///   M_ij = vol * sum_x conj(D_k g_i + s_ki) c_kl (D_l g_j + s_lj),
  /// with s the +1/-1/0 constant shift per direction.
  Eigen::MatrixXcd energy_matrix(const std::vector<Eigen::VectorXcd>& g, double shift) const;

  /// Cached dense eigensystem; throws ValidationError above max_size.
  const EigSys& eigensystem(long max_size = 16384) const;

 private:
  FundamentalCell cell_;
  StencilSet stencils_;
  int d1_ = 0;
  double mu_ = 0.0;
  SpMat H_;
  std::vector<Eigen::VectorXcd> cdiag_;
  struct EigCache;
  std::shared_ptr<EigCache> eig_cache_;
};

DiscreteForm assemble(const FundamentalCell& cell, const CoefficientField& c,
                      const StencilSet& stencils);
DiscreteForm assemble(const FundamentalCell& cell, const CoefficientField& c);

}  // namespace nilhom
