#pragma once

#include "nilhom/cell_problem.hpp"
#include "nilhom/discrete_form.hpp"

namespace nilhom {

/// Node grid over the unit cube with the Heisenberg manifold
/// identifications (x+1,y,z) ~ (x,y,z), (x,y+1,z+x) ~ (x,y,z),
/// (x,y,z+1) ~ (x,y,z).  The y-wrap shifts the z-index by x * n_z, exact
/// when n_z is a multiple of n_x (enforced).
class TwistedGrid {
 public:
  TwistedGrid(int nx, int ny, int nz);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  long num_nodes() const { return static_cast<long>(nx_) * ny_ * nz_; }
  double hx() const { return 1.0 / nx_; }
  double hy() const { return 1.0 / ny_; }
  double hz() const { return 1.0 / nz_; }

  long index(int i, int j, int k) const;
  void decode(long node, int& i, int& j, int& k) const;
  Eigen::Vector3d coords(long node) const;

  /// Neighbor one step along an axis, routed through the identifications.
  long step_x(long node, int dir) const;
  long step_y(long node, int dir) const;
  long step_z(long node, int dir) const;

  /// Neighbor along the horizontal flow of A_1: (x,y,z) -> (x+h, y, z+h*y).
  /// Needs n_z divisible by n_x * n_y; throws otherwise.
  long step_a1(long node, int dir) const;
  bool a1_steps_supported() const { return nz_ % (static_cast<long>(nx_) * ny_) == 0; }

 private:
  int nx_, ny_, nz_;
  int y_wrap_shift_;  // z-index shift per unit x-index on the y-wrap
};

/// Forward-difference stencils of the horizontal fields
/// A_1 = d_x + y d_z and A_2 = d_y on the twisted grid (d1 = 2);
/// coefficients are sampled at the nodes.
StencilSet horizontal_fields(const TwistedGrid& grid);

/// Forward-difference d_z on the twisted grid, for bracket diagnostics.
SpMat vertical_derivative(const TwistedGrid& grid);

/// Full Heisenberg pipeline: assemble the subelliptic form, solve the two
/// cell problems, return the 2x2 homogenized matrix.
Eigen::MatrixXcd heisenberg_homogenize(const CoefficientField& c, const TwistedGrid& grid,
                                       const CgOptions& opt = {});

/// Assembled subelliptic form on the twisted grid.
DiscreteForm heisenberg_form(const CoefficientField& c, const TwistedGrid& grid);

/// d_c(., source) with horizontal-only moves: edges along the A_1 and A_2
/// flows; lengths h sqrt((c^-1)_aa) at the node.  Needs A_1 steps on-grid.
Eigen::VectorXd cc_distance_nil(const CoefficientField& c, const TwistedGrid& grid, long source);

}  // namespace nilhom
