#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "nilhom/rational.hpp"

namespace nilhom {

/// Graded nilpotent Lie algebra given by a basis adapted to the layers
/// g = g1 + ... + gr.  Basis indices run layer by layer; the dilation
/// weight of a basis element equals its layer number.
class StratifiedAlgebra {
 public:
  /// brackets lists [X_i, X_j] = sum_k coeff * X_k for i < j (0-based);
  /// the antisymmetric completion is implicit.  Validates on construction.
  StratifiedAlgebra(std::vector<int> layer_dims,
                    const std::vector<std::tuple<int, int, int, Rational>>& brackets);

  static StratifiedAlgebra heisenberg();
  static StratifiedAlgebra abelian(int d);

  int dim() const { return dim_; }
  int step() const { return static_cast<int>(layer_dims_.size()); }
  const std::vector<int>& layer_dims() const { return layer_dims_; }
  int first_layer_dim() const { return layer_dims_[0]; }
  /// 1-based layer number; equals the dilation weight nu.
  int weight(int basis_index) const { return layer_of_[basis_index]; }

  Rational structure_const(int i, int j, int k) const;

  /// [u, v] in basis coordinates.  Ring needs +, -, *, and ComplexRational*Ring;
  /// ComplexRational and Poly both qualify.
  template <class Ring>
  std::vector<Ring> bracket(const std::vector<Ring>& u, const std::vector<Ring>& v) const {
    std::vector<Ring> out;
    out.reserve(dim_);
    for (int k = 0; k < dim_; ++k) out.push_back(ComplexRational(0) * u[0]);
    for (const auto& [ij, comps] : table_) {
      const auto [i, j] = ij;
      Ring uv = u[i] * v[j] - u[j] * v[i];
      for (const auto& [k, coeff] : comps) {
        out[k] += ComplexRational(coeff) * uv;
      }
    }
    return out;
  }

  /// Antisymmetry, Jacobi, grading, and generation by the first layer,
  /// all in exact arithmetic.  Throws ValidationError on failure.
  void validate() const;

 private:
  std::vector<int> layer_dims_;
  std::vector<int> layer_of_;
  int dim_ = 0;
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> table_;  // i < j
};

/// D = sum_i nu_i dim g^(i).
int homogeneous_dimension(const StratifiedAlgebra& a);

/// Exponential coordinates of the first kind; unconstrained global chart.
using GroupPoint = std::vector<double>;
using GroupPointQ = std::vector<Rational>;

/// Group product via the Dynkin series, truncated at the nilpotency step.
/// Exact for rational input.
GroupPointQ bch_product(const StratifiedAlgebra& a, const GroupPointQ& u, const GroupPointQ& v);
GroupPoint bch_product(const StratifiedAlgebra& a, const GroupPoint& u, const GroupPoint& v);

/// Template core used for both numeric and symbolic coordinates.
template <class Ring>
std::vector<Ring> bch_series(const StratifiedAlgebra& a, const std::vector<Ring>& u,
                             const std::vector<Ring>& v);

/// delta_eps: coordinate of layer i scales by eps^i.  Requires eps > 0.
GroupPointQ dilate(const StratifiedAlgebra& a, const Rational& eps, const GroupPointQ& u);
GroupPoint dilate(const StratifiedAlgebra& a, double eps, const GroupPoint& u);

}  // namespace nilhom
