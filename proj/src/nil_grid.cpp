#include "nilhom/nil_grid.hpp"

#include "nilhom/cc_distance.hpp"
#include "nilhom/errors.hpp"

namespace nilhom {

TwistedGrid::TwistedGrid(int nx, int ny, int nz) : nx_(nx), ny_(ny), nz_(nz) {
  if (nx < 2 || ny < 2 || nz < 2) throw ValidationError("twisted grid needs >= 2 nodes per axis");
  if (nz % nx != 0)
    throw ValidationError("twisted grid needs n_z divisible by n_x (z-shift must be on-grid)");
  y_wrap_shift_ = nz / nx;
}

long TwistedGrid::index(int i, int j, int k) const {
  return (static_cast<long>(i) * ny_ + j) * nz_ + k;
}

void TwistedGrid::decode(long node, int& i, int& j, int& k) const {
  k = static_cast<int>(node % nz_);
  node /= nz_;
  j = static_cast<int>(node % ny_);
  i = static_cast<int>(node / ny_);
}

Eigen::Vector3d TwistedGrid::coords(long node) const {
  int i, j, k;
  decode(node, i, j, k);
  return {i * hx(), j * hy(), k * hz()};
}

long TwistedGrid::step_x(long node, int dir) const {
  int i, j, k;
  decode(node, i, j, k);
  i += dir;
  if (i < 0) i += nx_;
  if (i >= nx_) i -= nx_;
  return index(i, j, k);
}

long TwistedGrid::step_y(long node, int dir) const {
  int i, j, k;
  decode(node, i, j, k);
  j += dir;
  // crossing the y face at x applies (x, y+1, z+x) ~ (x, y, z):
  // leaving upward re-enters at z - x, leaving downward at z + x
  if (j >= ny_) {
    j -= ny_;
    k -= i * y_wrap_shift_;
  } else if (j < 0) {
    j += ny_;
    k += i * y_wrap_shift_;
  }
  k %= nz_;
  if (k < 0) k += nz_;
  return index(i, j, k);
}

long TwistedGrid::step_z(long node, int dir) const {
  int i, j, k;
  decode(node, i, j, k);
  k += dir;
  if (k < 0) k += nz_;
  if (k >= nz_) k -= nz_;
  return index(i, j, k);
}

long TwistedGrid::step_a1(long node, int dir) const {
  if (!a1_steps_supported())
    throw ValidationError("A_1 flow steps need n_z divisible by n_x * n_y");
  int i, j, k;
  decode(node, i, j, k);
  // (x, y, z) -> (x + dir*hx, y, z + dir*hx*y); hx*y in z-index units is
  // j * nz / (nx * ny)
  const long shift = static_cast<long>(j) * (nz_ / (static_cast<long>(nx_) * ny_));
  i += dir;
  k += dir * static_cast<int>(shift);
  if (i < 0) {
    i += nx_;
    // x-wrap is the plain identification (x+1, y, z) ~ (x, y, z)
  } else if (i >= nx_) {
    i -= nx_;
  }
  k %= nz_;
  if (k < 0) k += nz_;
  return index(i, j, k);
}

StencilSet horizontal_fields(const TwistedGrid& grid) {
  const long n = grid.num_nodes();
  StencilSet st;
  st.d1 = 2;
  st.num_nodes = n;
  st.node_volume = grid.hx() * grid.hy() * grid.hz();

  // A_1 = d_x + y d_z
  SpMat A1(n, n);
  {
    std::vector<Eigen::Triplet<std::complex<double>>> trip;
    trip.reserve(4 * n);
    const double ihx = 1.0 / grid.hx();
    const double ihz = 1.0 / grid.hz();
    for (long node = 0; node < n; ++node) {
      int i, j, k;
      grid.decode(node, i, j, k);
      const double y = j * grid.hy();
      trip.emplace_back(node, grid.step_x(node, +1), ihx);
      trip.emplace_back(node, node, -ihx);
      if (y != 0.0) {
        trip.emplace_back(node, grid.step_z(node, +1), y * ihz);
        trip.emplace_back(node, node, -y * ihz);
      }
    }
    A1.setFromTriplets(trip.begin(), trip.end());
  }

  // A_2 = d_y with the twisted wrap
  SpMat A2(n, n);
  {
    std::vector<Eigen::Triplet<std::complex<double>>> trip;
    trip.reserve(2 * n);
    const double ihy = 1.0 / grid.hy();
    for (long node = 0; node < n; ++node) {
      trip.emplace_back(node, grid.step_y(node, +1), ihy);
      trip.emplace_back(node, node, -ihy);
    }
    A2.setFromTriplets(trip.begin(), trip.end());
  }

  st.D = {std::move(A1), std::move(A2)};
  auto gptr = std::make_shared<TwistedGrid>(grid);
  st.sample_point = [gptr](long node, int, int) {
    return Eigen::VectorXd(gptr->coords(node));
  };
  return st;
}

SpMat vertical_derivative(const TwistedGrid& grid) {
  const long n = grid.num_nodes();
  SpMat Dz(n, n);
  std::vector<Eigen::Triplet<std::complex<double>>> trip;
  trip.reserve(2 * n);
  const double ihz = 1.0 / grid.hz();
  for (long node = 0; node < n; ++node) {
    trip.emplace_back(node, grid.step_z(node, +1), ihz);
    trip.emplace_back(node, node, -ihz);
  }
  Dz.setFromTriplets(trip.begin(), trip.end());
  return Dz;
}

DiscreteForm heisenberg_form(const CoefficientField& c, const TwistedGrid& grid) {
  if (c.lattice().kind != LatticeKind::heisenberg)
    throw ValidationError("heisenberg form needs a heisenberg-lattice field");
  FundamentalCell cell{c.lattice(), {grid.nx(), grid.ny(), grid.nz()}};
  return assemble(cell, c, horizontal_fields(grid));
}

Eigen::MatrixXcd heisenberg_homogenize(const CoefficientField& c, const TwistedGrid& grid,
                                       const CgOptions& opt) {
  DiscreteForm form = heisenberg_form(c, grid);
  return homogenized_matrix(form, solve_cell_problem(form, opt));
}

Eigen::VectorXd cc_distance_nil(const CoefficientField& c, const TwistedGrid& grid, long source) {
  if (!grid.a1_steps_supported())
    throw ValidationError("nil distance needs n_z divisible by n_x * n_y");
  if (!(c.ellipticity() > 0)) throw ValidationError("nil distance needs a strongly elliptic field");
  const long n = grid.num_nodes();
  std::vector<std::vector<std::pair<long, double>>> adj(n);
  for (long node = 0; node < n; ++node) {
    Eigen::VectorXd x = grid.coords(node);
    Eigen::MatrixXcd cinv = c(x).inverse();
    const double w1 = grid.hx() * std::sqrt(std::abs(cinv(0, 0).real()));
    const double w2 = grid.hy() * std::sqrt(std::abs(cinv(1, 1).real()));
    long a1 = grid.step_a1(node, +1);
    long a2 = grid.step_y(node, +1);
    adj[node].emplace_back(a1, w1);
    adj[a1].emplace_back(node, w1);
    adj[node].emplace_back(a2, w2);
    adj[a2].emplace_back(node, w2);
  }
  return dijkstra(n, adj, source);
}

}  // namespace nilhom
