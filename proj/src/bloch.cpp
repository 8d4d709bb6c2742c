#include "nilhom/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "nilhom/errors.hpp"

namespace nilhom {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

FiberFactory::FiberFactory(const CoefficientField& c, int resolution) {
  if (c.lattice().kind != LatticeKind::integer_flat)
    throw ValidationError("bloch fibers are defined for flat lattices");
  if (std::abs(c.lattice().scale - 1.0) > 1e-12)
    throw ValidationError("bloch fibers expect the period-1 lattice");
  if (resolution < 2) throw ValidationError("fiber resolution must be at least 2");
  d_ = c.ambient_dim();
  d1_ = c.d1();
  res_ = resolution;

  // centered mode box
  const int lo = -(res_ / 2), hi = res_ - res_ / 2;  // [lo, hi)
  std::vector<Eigen::VectorXi> modes;
  Eigen::VectorXi m = Eigen::VectorXi::Constant(d_, lo);
  while (true) {
    modes.push_back(m);
    int k = d_ - 1;
    while (k >= 0) {
      if (++m[k] < hi) break;
      m[k--] = lo;
    }
    if (k < 0) break;
  }
  modes_ = std::move(modes);

  // Fourier coefficients on the difference box via plain DFT of samples
  const int ns = std::max(4 * res_, 64);
  long total_samples = 1;
  for (int k = 0; k < d_; ++k) total_samples *= ns;
  std::vector<Eigen::MatrixXcd> samples(total_samples);
  {
    Eigen::VectorXi iv = Eigen::VectorXi::Zero(d_);
    for (long s = 0; s < total_samples; ++s) {
      Eigen::VectorXd x(d_);
      for (int k = 0; k < d_; ++k) x[k] = static_cast<double>(iv[k]) / ns;
      samples[s] = c(x);
      int k = d_ - 1;
      while (k >= 0 && ++iv[k] == ns) iv[k--] = 0;
    }
  }
  const int qspan = 2 * res_ - 1;
  long qtotal = 1;
  for (int k = 0; k < d_; ++k) qtotal *= qspan;
  qtable_.assign(qtotal, Eigen::MatrixXcd::Zero(d1_, d1_));
  Eigen::VectorXi q = Eigen::VectorXi::Constant(d_, -(res_ - 1));
  for (long qi = 0; qi < qtotal; ++qi) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d1_, d1_);
    Eigen::VectorXi iv = Eigen::VectorXi::Zero(d_);
    for (long s = 0; s < total_samples; ++s) {
      double phase = 0.0;
      for (int k = 0; k < d_; ++k) phase -= kTwoPi * q[k] * iv[k] / static_cast<double>(ns);
      acc += std::polar(1.0, phase) * samples[s];
      int k = d_ - 1;
      while (k >= 0 && ++iv[k] == ns) iv[k--] = 0;
    }
    qtable_[qindex(q)] = acc / static_cast<double>(total_samples);
    int k = d_ - 1;
    while (k >= 0 && ++q[k] == res_) q[k--] = -(res_ - 1);
  }
}

long FiberFactory::qindex(const Eigen::VectorXi& q) const {
  const int qspan = 2 * res_ - 1;
  long idx = 0;
  for (int k = 0; k < d_; ++k) idx = idx * qspan + (q[k] + res_ - 1);
  return idx;
}

const Eigen::MatrixXcd& FiberFactory::coefficient(const Eigen::VectorXi& q) const {
  return qtable_[qindex(q)];
}

BlochFiber FiberFactory::fiber(const Eigen::VectorXd& theta) const {
  if (theta.size() != d_) throw ValidationError("quasimomentum dimension mismatch");
  const long n = static_cast<long>(modes_.size());
  BlochFiber out;
  out.theta = theta;
  out.matrix = Eigen::MatrixXcd::Zero(n, n);
  for (long a = 0; a < n; ++a) {
    Eigen::VectorXd ka = kTwoPi * modes_[a].cast<double>() + theta;
    for (long b = a; b < n; ++b) {
      Eigen::VectorXd kb = kTwoPi * modes_[b].cast<double>() + theta;
      const Eigen::MatrixXcd& chat = coefficient(modes_[a] - modes_[b]);
      std::complex<double> entry = 0.0;
      for (int i = 0; i < d1_; ++i) {
        for (int j = 0; j < d1_; ++j) entry += ka[i] * chat(i, j) * kb[j];
      }
      out.matrix(a, b) = entry;
      out.matrix(b, a) = std::conj(entry);  // hermitian by construction
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(out.matrix, Eigen::EigenvaluesOnly);
  out.eigenvalues = eig.eigenvalues();
  return out;
}

BlochFiber fiber_operator(const CoefficientField& c, const Eigen::VectorXd& theta,
                          int resolution) {
  return FiberFactory(c, resolution).fiber(theta);
}

BandTable band_structure(const CoefficientField& c, const std::vector<Eigen::VectorXd>& path,
                         int n_max, int resolution) {
  if (path.empty()) throw ValidationError("band path is empty");
  FiberFactory factory(c, resolution);
  if (n_max > static_cast<int>(factory.modes().size()))
    throw ValidationError("n_max exceeds the fiber matrix size");
  BandTable table;
  table.thetas = path;
  table.bands.resize(static_cast<long>(path.size()), n_max);
  for (std::size_t p = 0; p < path.size(); ++p) {
    BlochFiber f = factory.fiber(path[p]);
    for (int b = 0; b < n_max; ++b) table.bands(static_cast<long>(p), b) = f.eigenvalues[b];
  }
  return table;
}

std::vector<double> homogenized_limit_set(const Eigen::MatrixXcd& chat,
                                          const Eigen::VectorXd& theta, int M) {
  const int d = static_cast<int>(theta.size());
  if (chat.rows() != d || chat.cols() != d)
    throw ValidationError("homogenized matrix dimension mismatch");
  std::vector<double> prev;
  for (int box = 2; box <= 64; ++box) {
    std::vector<double> values;
    Eigen::VectorXi n = Eigen::VectorXi::Constant(d, -box);
    while (true) {
      Eigen::VectorXd v = kTwoPi * n.cast<double>() - theta;
      // v real and Chat hermitian: the quadratic form sees only Re(Chat)
      values.push_back((v.transpose() * chat.real() * v).value());
      int k = d - 1;
      while (k >= 0 && ++n[k] > box) n[k--] = -box;
      if (k < 0) break;
    }
    std::sort(values.begin(), values.end());
    if (static_cast<int>(values.size()) < M)
      throw ValidationError("limit set request exceeds the enumeration box");
    values.resize(M);
    if (!prev.empty()) {
      double drift = 0.0;
      for (int k = 0; k < M; ++k)
        drift = std::max(drift, std::abs(values[k] - prev[k]) /
                                    std::max(1.0, std::abs(values[k])));
      if (drift < 1e-13) return values;
    }
    prev = std::move(values);
  }
  return prev;  // stable for every practical M long before box 64
}

RefinementResult spectral_refinement(const CoefficientField& c, const Eigen::VectorXd& theta,
                                     int N, int M, const Eigen::MatrixXcd& chat,
                                     int fiber_resolution) {
  if (N < 1) throw ValidationError("refinement order N must be >= 1");
  const int d = c.ambient_dim();
  FiberFactory factory(c, fiber_resolution);

  std::vector<double> folded;
  Eigen::VectorXi m = Eigen::VectorXi::Zero(d);
  while (true) {
    Eigen::VectorXd theta_w(d);
    for (int k = 0; k < d; ++k) theta_w[k] = (theta[k] + kTwoPi * m[k]) / N;
    BlochFiber f = factory.fiber(theta_w);
    for (long e = 0; e < f.eigenvalues.size(); ++e)
      folded.push_back(static_cast<double>(N) * N * f.eigenvalues[e]);
    int k = d - 1;
    while (k >= 0 && ++m[k] == N) m[k--] = 0;
    if (k < 0) break;
  }
  std::sort(folded.begin(), folded.end());
  if (static_cast<int>(folded.size()) < M)
    throw ValidationError("refinement: M exceeds the computed eigenvalue count");
  folded.resize(M);

  RefinementResult out;
  out.folded = std::move(folded);
  out.limit = homogenized_limit_set(chat, theta, M);
  for (int k = 0; k < M; ++k) {
    double denom = std::max(std::abs(out.limit[k]), 1e-12);
    out.max_relative_gap =
        std::max(out.max_relative_gap, std::abs(out.folded[k] - out.limit[k]) / denom);
  }
  return out;
}

}  // namespace nilhom
