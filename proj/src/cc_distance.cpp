#include "nilhom/cc_distance.hpp"

#include <limits>
#include <queue>

#include "nilhom/errors.hpp"

namespace nilhom {

Eigen::VectorXd dijkstra(long num_nodes,
                         const std::vector<std::vector<std::pair<long, double>>>& adjacency,
                         long source) {
  Eigen::VectorXd dist =
      Eigen::VectorXd::Constant(num_nodes, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, long>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, node] = heap.top();
    heap.pop();
    if (d > dist[node]) continue;
    for (const auto& [next, w] : adjacency[node]) {
      double nd = d + w;
      if (nd < dist[next]) {
        dist[next] = nd;
        heap.emplace(nd, next);
      }
    }
  }
  if (!dist.allFinite()) throw SolverError("metric graph is disconnected");
  return dist;
}

Eigen::VectorXd cc_distance(const CoefficientField& c, const FundamentalCell& cell, long source) {
  if (cell.lattice.kind != LatticeKind::integer_flat)
    throw ValidationError("cc_distance: flat cell expected (nil grids have their own routine)");
  if (!(c.ellipticity() > 0)) throw ValidationError("cc_distance needs a strongly elliptic field");
  FlatTorusGrid grid(cell);
  const int d = cell.dim();
  std::vector<std::vector<std::pair<long, double>>> adj(grid.num_nodes);
  for (long node = 0; node < grid.num_nodes; ++node) {
    Eigen::VectorXd x = grid.coords(node);
    for (int axis = 0; axis < d; ++axis) {
      Eigen::VectorXd mid = x;
      mid[axis] += grid.h[axis] / 2.0;
      Eigen::MatrixXcd cinv = c(mid).inverse();
      double w = grid.h[axis] * std::sqrt(std::abs(cinv(axis, axis).real()));
      long to = grid.neighbor(node, axis, +1);
      adj[node].emplace_back(to, w);
      adj[to].emplace_back(node, w);
    }
  }
  return dijkstra(grid.num_nodes, adj, source);
}

}  // namespace nilhom
