#pragma once

#include <vector>

#include "nilhom/diffop.hpp"
#include "nilhom/stratified.hpp"

namespace nilhom {

/// Polynomial group law in one fixed global chart.  The chart must send the
/// one-parameter subgroups of the basis elements to coordinate lines,
/// chart(exp(t X_i)) = t e_i; this holds for exponential coordinates of the
/// first kind and for the Heisenberg matrix chart.
struct GroupChart {
  int dim = 0;
  /// m_k(u, v): polynomials in 2*dim variables, u = vars [0, dim),
  /// v = vars [dim, 2*dim).
  std::vector<Poly> law;
  /// Exponential coordinates of a chart point, as polynomials in the chart
  /// variables (identity for the exponential chart itself).
  std::vector<Poly> to_exponential;
};

/// Chart whose law is the truncated Dynkin series of the algebra.
GroupChart exponential_chart(const StratifiedAlgebra& a);

/// Upper-triangular matrix coordinates (x, y, z) of the 3D Heisenberg group:
/// (u1,u2,u3)*(v1,v2,v3) = (u1+v1, u2+v2, u3+v3+u1*v2).
GroupChart heisenberg_matrix_chart();

enum class Side { left, right };

/// Invariant vector fields as first-order operators in the chart variables:
///   left : (A_i f)(g) = d/dt f(exp(t X_i) g) |_{t=0},
///   right: (A_i f)(g) = d/dt f(g exp(t X_i)) |_{t=0}.
/// Brackets reproduce the structure constants with sign -1 (left) / +1
/// (right); the left convention gives the Heisenberg fields
/// A_1 = d_x + y d_z, A_2 = d_y, A_3 = d_z in the matrix chart.
std::vector<PolyDiffOp> invariant_fields(const GroupChart& chart, Side side);
std::vector<PolyDiffOp> invariant_fields(const StratifiedAlgebra& a, Side side);

/// First-layer coordinate functions y_j, j < d1, vanishing at the identity
/// and satisfying A_i^(left) y_j = A_i^(right) y_j = delta_ij.
std::vector<Poly> coordinate_functions(const GroupChart& chart, int d1);
std::vector<Poly> coordinate_functions(const StratifiedAlgebra& a);

/// Group law composed pointwise; u, v are chart points.
std::vector<double> chart_product(const GroupChart& chart, const std::vector<double>& u,
                                  const std::vector<double>& v);

}  // namespace nilhom
