#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "nilhom/discrete_form.hpp"

namespace nilhom {

/// Single-source shortest paths on an explicit weighted graph.
Eigen::VectorXd dijkstra(long num_nodes,
                         const std::vector<std::vector<std::pair<long, double>>>& adjacency,
                         long source);

/// Coefficient-adapted distance d_c(., source) on the flat torus grid:
/// shortest path over axis edges with length h_i sqrt((c^-1)_ii) at the
/// edge midpoint -- the dual form of the constraint
/// sum c_ij (A_i psi)(A_j psi) <= 1.
Eigen::VectorXd cc_distance(const CoefficientField& c, const FundamentalCell& cell, long source);

}  // namespace nilhom
