#include "nilhom/discrete_form.hpp"

#include <mutex>

#include "nilhom/errors.hpp"

namespace nilhom {

FlatTorusGrid::FlatTorusGrid(const FundamentalCell& cell) {
  n = cell.resolution;
  Eigen::VectorXd box = cell.box();
  h.resize(cell.dim());
  num_nodes = 1;
  for (int k = 0; k < cell.dim(); ++k) {
    h[k] = box[k] / n[k];
    num_nodes *= n[k];
  }
}

long FlatTorusGrid::index(const std::vector<int>& iv) const {
  long idx = 0;
  for (std::size_t k = 0; k < n.size(); ++k) idx = idx * n[k] + iv[k];
  return idx;
}

std::vector<int> FlatTorusGrid::decode(long node) const {
  std::vector<int> iv(n.size());
  for (int k = static_cast<int>(n.size()) - 1; k >= 0; --k) {
    iv[k] = static_cast<int>(node % n[k]);
    node /= n[k];
  }
  return iv;
}

long FlatTorusGrid::neighbor(long node, int axis, int dir) const {
  auto iv = decode(node);
  iv[axis] += dir;
  if (iv[axis] < 0) iv[axis] += n[axis];
  if (iv[axis] >= n[axis]) iv[axis] -= n[axis];
  return index(iv);
}

Eigen::VectorXd FlatTorusGrid::coords(long node) const {
  auto iv = decode(node);
  Eigen::VectorXd x(n.size());
  for (std::size_t k = 0; k < n.size(); ++k) x[k] = iv[k] * h[k];
  return x;
}

StencilSet flat_stencils(const FundamentalCell& cell) {
  if (cell.lattice.kind != LatticeKind::integer_flat)
    throw ValidationError("flat stencils need a flat lattice");
  auto grid = std::make_shared<FlatTorusGrid>(cell);
  const int d = cell.dim();

  StencilSet st;
  st.d1 = d;
  st.num_nodes = grid->num_nodes;
  st.node_volume = grid->h.prod();
  st.D.reserve(d);
  for (int axis = 0; axis < d; ++axis) {
    SpMat D(grid->num_nodes, grid->num_nodes);
    std::vector<Eigen::Triplet<std::complex<double>>> trip;
    trip.reserve(2 * grid->num_nodes);
    const double inv_h = 1.0 / grid->h[axis];
    for (long node = 0; node < grid->num_nodes; ++node) {
      trip.emplace_back(node, grid->neighbor(node, axis, +1), inv_h);
      trip.emplace_back(node, node, -inv_h);
    }
    D.setFromTriplets(trip.begin(), trip.end());
    st.D.push_back(std::move(D));
  }
  st.sample_point = [grid](long node, int i, int j) {
    Eigen::VectorXd x = grid->coords(node);
    x[i] += grid->h[i] / 2.0;
    if (j != i) x[j] += grid->h[j] / 2.0;
    return x;
  };
  return st;
}

struct DiscreteForm::EigCache {
  std::once_flag flag;
  EigSys sys;
};

DiscreteForm::DiscreteForm(const FundamentalCell& cell, const CoefficientField& c,
                           StencilSet stencils)
    : cell_(cell), stencils_(std::move(stencils)), d1_(stencils_.d1) {
  for (int nk : cell.resolution) {
    if (nk < 4) throw ValidationError("resolution must be at least 4 per axis");
  }
  mu_ = c.ellipticity();
  if (!(mu_ > 0)) throw ValidationError("coefficient field is not strongly elliptic (mu <= 0)");

  const long n = stencils_.num_nodes;
  cdiag_.assign(static_cast<std::size_t>(d1_) * d1_, Eigen::VectorXcd(n));
  for (long node = 0; node < n; ++node) {
    for (int i = 0; i < d1_; ++i) {
      for (int j = i; j < d1_; ++j) {
        std::complex<double> value = c(stencils_.sample_point(node, i, j))(i, j);
        cdiag_[i * d1_ + j][node] = value;
        if (j != i) cdiag_[j * d1_ + i][node] = std::conj(value);
      }
    }
  }

  H_ = SpMat(n, n);
  for (int i = 0; i < d1_; ++i) {
    SpMat Dt = SpMat(stencils_.D[i].adjoint());
    for (int j = 0; j < d1_; ++j) {
      SpMat CD = cdiag_[i * d1_ + j].asDiagonal() * stencils_.D[j];
      H_ += Dt * CD;
    }
  }
  H_ = SpMat(0.5 * (H_ + SpMat(H_.adjoint())));  // kill accumulation roundoff
  H_.makeCompressed();
  eig_cache_ = std::make_shared<EigCache>();
}

Eigen::MatrixXcd DiscreteForm::energy_matrix(const std::vector<Eigen::VectorXcd>& g,
                                             double shift) const {
  if (static_cast<int>(g.size()) != d1_) throw ValidationError("competitor tuple size mismatch");
  const long n = stencils_.num_nodes;
  std::vector<std::vector<Eigen::VectorXcd>> grad(d1_);
  for (int i = 0; i < d1_; ++i) {
    grad[i].resize(d1_);
    for (int k = 0; k < d1_; ++k) {
      grad[i][k] = stencils_.D[k] * g[i];
      if (k == i) grad[i][k].array() += shift;
    }
  }
  Eigen::MatrixXcd m(d1_, d1_);
  for (int i = 0; i < d1_; ++i) {
    for (int j = 0; j < d1_; ++j) {
      std::complex<double> acc = 0.0;
      for (int k = 0; k < d1_; ++k) {
        for (int l = 0; l < d1_; ++l) {
          const auto& ckl = cdiag_[k * d1_ + l];
          acc += grad[i][k].conjugate().cwiseProduct(ckl).cwiseProduct(grad[j][l]).sum();
        }
      }
      m(i, j) = acc * stencils_.node_volume;
    }
  }
  (void)n;
  return 0.5 * (m + m.adjoint().eval());
}

const EigSys& DiscreteForm::eigensystem(long max_size) const {
  if (size() > max_size)
    throw ValidationError("grid too large for a dense eigensystem (" + std::to_string(size()) +
                          " nodes)");
  std::call_once(eig_cache_->flag, [&] {
    Eigen::MatrixXcd dense(H_);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(dense);
    eig_cache_->sys.vectors = eig.eigenvectors();
    eig_cache_->sys.values = eig.eigenvalues();
  });
  return eig_cache_->sys;
}

DiscreteForm assemble(const FundamentalCell& cell, const CoefficientField& c,
                      const StencilSet& stencils) {
  return DiscreteForm(cell, c, stencils);
}

DiscreteForm assemble(const FundamentalCell& cell, const CoefficientField& c) {
  return DiscreteForm(cell, c, flat_stencils(cell));
}

}  // namespace nilhom
