#pragma once

#include <array>
#include <vector>

#include "nilhom/diffop.hpp"

namespace nilhom {

/// Result of closing the magnetic momenta X_i = p_i - coupling * a_i,
/// p_i = -i d_i, under iterated commutators.
struct MagneticClosureReport {
  /// Closed basis; the first three entries are the generators X_1..X_3,
  /// later entries are leading-coefficient-normalized commutator residues
  /// (field components and their derivatives, up to scalars).
  std::vector<PolyDiffOp> basis;
  int dimension = 0;
  /// Nilpotency step: length of the lower central series.
  int step = 0;
  /// Dimensions of the lower central series terms, starting with the
  /// whole algebra.
  std::vector<int> central_series_dims;
};

/// Iterates commutators of the magnetic momenta until no new independent
/// element appears.  Polynomial potentials guarantee termination; a safety
/// cap of 64 basis elements throws SolverError if exceeded.
MagneticClosureReport magnetic_closure(const std::array<Poly, 3>& potential,
                                       const Rational& coupling);

}  // namespace nilhom
