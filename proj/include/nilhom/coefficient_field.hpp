#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "nilhom/expression.hpp"

namespace nilhom {

enum class LatticeKind { integer_flat, heisenberg };

/// Period lattice descriptor.  scale multiplies the generators: the flat
/// lattice becomes (scale Z)^d, the Heisenberg lattice is dilated with
/// weights (1, 1, 2), so its generators are (s,0,0), (0,s,0), (0,0,s^2).
struct Lattice {
  LatticeKind kind = LatticeKind::integer_flat;
  int dim = 1;  // ambient dimension (3 for heisenberg)
  double scale = 1.0;

  static Lattice flat(int dim, double scale = 1.0) {
    return {LatticeKind::integer_flat, dim, scale};
  }
  static Lattice heis(double scale = 1.0) { return {LatticeKind::heisenberg, 3, scale}; }

  /// Right translation x * gamma^word in the ambient chart.
  Eigen::VectorXd translate(const Eigen::VectorXd& x, const std::vector<long>& word) const;
  int num_generators() const { return dim; }
};

/// Lattice-periodic hermitian matrix field c_{ij}(x), i,j < d1.  Either a
/// closed-form sampler or a grid tensor of per-cell matrices (piecewise
/// constant, midpoint-sampled when derived from a sampler).
class CoefficientField {
 public:
  using Matrix = Eigen::MatrixXcd;
  using Sampler = std::function<Matrix(const Eigen::VectorXd&)>;

  CoefficientField() = default;

  static CoefficientField from_sampler(const Lattice& lattice, int d1, Sampler sampler);
  static CoefficientField from_expressions(const Lattice& lattice,
                                           const std::vector<std::vector<Expression>>& entries);
  static CoefficientField from_grid(const Lattice& lattice, int d1,
                                    std::vector<int> resolution, std::vector<Matrix> cells);
  static CoefficientField constant(const Lattice& lattice, const Matrix& value);

  /// Self-describing JSON file with interleaved re/im doubles; see
  /// docs/formats.md.
  static CoefficientField load(const std::string& path);
  void save(const std::string& path) const;

  int d1() const { return d1_; }
  const Lattice& lattice() const { return lattice_; }
  int ambient_dim() const { return lattice_.dim; }
  bool is_grid() const { return !cells_.empty(); }
  const std::vector<int>& resolution() const { return resolution_; }

  Matrix operator()(const Eigen::VectorXd& x) const;

  /// min over samples of the smallest eigenvalue; cached per instance.
  /// Throws ValidationError (naming the point) on a non-hermitian sample.
  double ellipticity(int samples_per_axis = 17) const;

  /// Hermiticity and lattice periodicity on a sample cloud.
  void validate(int samples_per_axis = 7, double tol = 1e-12) const;

 private:
  struct MuCache;
  Lattice lattice_;
  int d1_ = 0;
  Sampler sampler_;
  std::vector<int> resolution_;
  std::vector<Matrix> cells_;  // row-major over the resolution grid
  std::shared_ptr<MuCache> mu_cache_;
  long cell_index(const Eigen::VectorXd& x) const;
  double compute_mu(int samples_per_axis) const;
};

/// c^eps(x) = c(delta_{1/eps} x); the period lattice becomes eps Gamma.
CoefficientField scale_epsilon(const CoefficientField& c, double eps);

/// Product-form smooth nonnegative kernel with unit mass, supported in
/// [-1/2, 1/2]^d.  profile is the per-axis factor.
struct Mollifier {
  int dim = 1;
  std::function<double(double)> profile;
};

/// (35/16)^d prod_i (1 - (2 y_i)^2)^3, exactly normalized.
Mollifier polynomial_bump(int dim);

/// c^(n)(x) = n^d  int tau(n y) c(x - y) dy as a discrete periodic
/// convolution on a grid; validates positivity and unit mass of tau to 1e-8.
/// resolution 0 means: keep the grid of c, or 1024 per axis for samplers.
CoefficientField mollify(const CoefficientField& c, int n, const Mollifier& tau,
                         int resolution = 0);

}  // namespace nilhom
