#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "nilhom/coefficient_field.hpp"

namespace nilhom {

/// Coordinate fundamental domain of the period lattice: the half-open box
/// [0,s)^d for (s Z)^d, and [0,s) x [0,s) x [0,s^2) for the dilated integer
/// Heisenberg lattice with its twisted identifications.  Lattice translates
/// tile the group with measure-zero overlap.
struct FundamentalCell {
  Lattice lattice;
  std::vector<int> resolution;  // grid cells per axis

  int dim() const { return lattice.dim; }
  /// Axis lengths of the coordinate box.
  Eigen::VectorXd box() const;
  double measure() const;

  /// Representative of x inside the box; optionally reports the lattice
  /// word w with reduce(x) = x * gamma^w.
  Eigen::VectorXd reduce(const Eigen::VectorXd& x, std::vector<long>* word = nullptr) const;
  bool contains(const Eigen::VectorXd& x) const;

  /// Tiling axioms on a random sample cloud: every point reduces into the
  /// box and reconstructs, and no nonzero translate of an interior point
  /// stays in the box.  Throws ValidationError on any violation.
  void check_tiling(int samples, std::mt19937_64& rng) const;
};

FundamentalCell fundamental_cell(const Lattice& lattice, std::vector<int> resolution);

}  // namespace nilhom
