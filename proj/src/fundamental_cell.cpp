#include "nilhom/fundamental_cell.hpp"

#include <cmath>

#include "nilhom/errors.hpp"

namespace nilhom {

Eigen::VectorXd FundamentalCell::box() const {
  Eigen::VectorXd b(lattice.dim);
  const double s = lattice.scale;
  for (int k = 0; k < lattice.dim; ++k) b[k] = s;
  if (lattice.kind == LatticeKind::heisenberg) b[2] = s * s;
  return b;
}

double FundamentalCell::measure() const { return box().prod(); }

Eigen::VectorXd FundamentalCell::reduce(const Eigen::VectorXd& x, std::vector<long>* word) const {
  if (x.size() != lattice.dim) throw ValidationError("reduce: dimension mismatch");
  const double s = lattice.scale;
  // roundoff at the upper face wraps back to the lower one
  auto wrap = [](double value, double span, long& m) {
    if (value >= span) {
      value -= span;
      m -= 1;
    } else if (value < 0.0) {
      value += span;
      m += 1;
    }
    return value;
  };
  Eigen::VectorXd out = x;
  std::vector<long> w(lattice.num_generators(), 0);
  if (lattice.kind == LatticeKind::integer_flat) {
    for (int k = 0; k < lattice.dim; ++k) {
      long m = -static_cast<long>(std::floor(x[k] / s));
      out[k] = wrap(x[k] + s * m, s, m);
      w[k] = m;
    }
  } else {
    long m1 = -static_cast<long>(std::floor(x[0] / s));
    long m2 = -static_cast<long>(std::floor(x[1] / s));
    out[0] = wrap(x[0] + s * m1, s, m1);
    out[1] = wrap(x[1] + s * m2, s, m2);
    // right translation by g1^m1 g2^m2 moves z to z + x*(s m2) + m1 m2 s^2
    double z = x[2] + x[0] * (s * m2) + m1 * m2 * s * s;
    long m3 = -static_cast<long>(std::floor(z / (s * s)));
    out[2] = wrap(z + m3 * s * s, s * s, m3);
    w = {m1, m2, m3};
  }
  if (word) *word = std::move(w);
  return out;
}

bool FundamentalCell::contains(const Eigen::VectorXd& x) const {
  Eigen::VectorXd b = box();
  for (int k = 0; k < lattice.dim; ++k) {
    if (x[k] < 0.0 || x[k] >= b[k]) return false;
  }
  return true;
}

void FundamentalCell::check_tiling(int samples, std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<long> small_word(-2, 2);
  Eigen::VectorXd b = box();
  for (int trial = 0; trial < samples; ++trial) {
    // (1) translates cover: a random ambient point reduces into the box and
    // the reported word reconstructs it
    Eigen::VectorXd x(lattice.dim);
    for (int k = 0; k < lattice.dim; ++k) x[k] = (unit(rng) - 0.5) * 6.0 * b[k];
    std::vector<long> w;
    Eigen::VectorXd r = reduce(x, &w);
    if (!contains(r)) throw ValidationError("reduced point escaped the fundamental cell");
    Eigen::VectorXd back = lattice.translate(x, w);
    if ((back - r).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, b.maxCoeff()))
      throw ValidationError("lattice word does not reconstruct the reduced point");

    // (2) measure-zero overlap: a nonzero translate of an interior point
    // leaves the box
    Eigen::VectorXd y(lattice.dim);
    for (int k = 0; k < lattice.dim; ++k) y[k] = unit(rng) * b[k];
    std::vector<long> nz(lattice.num_generators(), 0);
    bool all_zero = true;
    for (auto& m : nz) {
      m = small_word(rng);
      if (m != 0) all_zero = false;
    }
    if (all_zero) nz[0] = 1;
    Eigen::VectorXd moved = lattice.translate(y, nz);
    if (contains(moved)) throw ValidationError("distinct lattice translates overlap");
  }
}

FundamentalCell fundamental_cell(const Lattice& lattice, std::vector<int> resolution) {
  if (static_cast<int>(resolution.size()) != lattice.dim)
    throw ValidationError("cell resolution rank must match the ambient dimension");
  for (int n : resolution) {
    if (n < 1) throw ValidationError("cell resolution must be positive");
  }
  if (lattice.kind == LatticeKind::heisenberg) {
    if (lattice.dim != 3) throw ValidationError("heisenberg cell is three-dimensional");
    if (resolution[2] % resolution[0] != 0)
      throw ValidationError("heisenberg grid needs n_z divisible by n_x");
  }
  FundamentalCell cell{lattice, std::move(resolution)};
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  cell.check_tiling(256, rng);
  return cell;
}

}  // namespace nilhom
