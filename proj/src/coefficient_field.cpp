#include "nilhom/coefficient_field.hpp"

#include <cmath>
#include <fstream>
#include <mutex>

#include "json.hpp"
#include "nilhom/errors.hpp"

namespace nilhom {

struct CoefficientField::MuCache {
  std::once_flag flag;
  double value = 0.0;
};

namespace {

std::string point_str(const Eigen::VectorXd& x) {
  std::string s = "(";
  for (int k = 0; k < x.size(); ++k) {
    if (k) s += ", ";
    s += std::to_string(x[k]);
  }
  return s + ")";
}

}  // namespace

Eigen::VectorXd Lattice::translate(const Eigen::VectorXd& x, const std::vector<long>& word) const {
  if (static_cast<int>(word.size()) != num_generators())
    throw ValidationError("lattice word length mismatch");
  Eigen::VectorXd out = x;
  if (kind == LatticeKind::integer_flat) {
    for (int k = 0; k < dim; ++k) out[k] += scale * static_cast<double>(word[k]);
    return out;
  }
  // heisenberg matrix chart: gamma = g1^m1 g2^m2 g3^m3
  //   = (m1 s, m2 s, (m1 m2 + m3) s^2), and
  //   (x,y,z) * (a,b,c) = (x+a, y+b, z+c+x*b)
  const double s = scale;
  const double a = s * static_cast<double>(word[0]);
  const double b = s * static_cast<double>(word[1]);
  const double c = s * s * static_cast<double>(word[0] * word[1] + word[2]);
  out[0] = x[0] + a;
  out[1] = x[1] + b;
  out[2] = x[2] + c + x[0] * b;
  return out;
}

CoefficientField CoefficientField::from_sampler(const Lattice& lattice, int d1, Sampler sampler) {
  if (d1 < 1) throw ValidationError("d1 must be positive");
  if (lattice.kind == LatticeKind::heisenberg && d1 != 2)
    throw ValidationError("heisenberg fields have d1 = 2");
  CoefficientField c;
  c.lattice_ = lattice;
  c.d1_ = d1;
  c.sampler_ = std::move(sampler);
  c.mu_cache_ = std::make_shared<MuCache>();
  return c;
}

CoefficientField CoefficientField::from_expressions(
    const Lattice& lattice, const std::vector<std::vector<Expression>>& entries) {
  const int d1 = static_cast<int>(entries.size());
  for (const auto& row : entries) {
    if (static_cast<int>(row.size()) != d1)
      throw ValidationError("coefficient expression matrix must be square");
  }
  auto table = std::make_shared<std::vector<std::vector<Expression>>>(entries);
  Sampler sampler = [table, d1](const Eigen::VectorXd& x) {
    Matrix m(d1, d1);
    std::vector<double> p(x.data(), x.data() + x.size());
    for (int i = 0; i < d1; ++i) {
      for (int j = 0; j < d1; ++j) m(i, j) = (*table)[i][j](p);
    }
    return m;
  };
  return from_sampler(lattice, d1, std::move(sampler));
}

CoefficientField CoefficientField::from_grid(const Lattice& lattice, int d1,
                                             std::vector<int> resolution,
                                             std::vector<Matrix> cells) {
  if (static_cast<int>(resolution.size()) != lattice.dim)
    throw ValidationError("grid resolution rank must match the ambient dimension");
  long total = 1;
  for (int n : resolution) {
    if (n < 1) throw ValidationError("grid resolution must be positive");
    total *= n;
  }
  if (static_cast<long>(cells.size()) != total)
    throw ValidationError("grid cell count does not match the resolution");
  for (const auto& m : cells) {
    if (m.rows() != d1 || m.cols() != d1) throw ValidationError("grid cell matrix size mismatch");
  }
  CoefficientField c;
  c.lattice_ = lattice;
  c.d1_ = d1;
  c.resolution_ = std::move(resolution);
  c.cells_ = std::move(cells);
  c.mu_cache_ = std::make_shared<MuCache>();
  return c;
}

CoefficientField CoefficientField::constant(const Lattice& lattice, const Matrix& value) {
  Matrix copy = value;
  return from_sampler(lattice, static_cast<int>(value.rows()),
                      [copy](const Eigen::VectorXd&) { return copy; });
}

long CoefficientField::cell_index(const Eigen::VectorXd& x) const {
  // reduce to the fundamental coordinate cell, then locate the grid cell
  const double s = lattice_.scale;
  long idx = 0;
  if (lattice_.kind == LatticeKind::integer_flat) {
    for (int k = 0; k < lattice_.dim; ++k) {
      double frac = x[k] / s - std::floor(x[k] / s);
      int cell = std::min<int>(resolution_[k] - 1, static_cast<int>(frac * resolution_[k]));
      idx = idx * resolution_[k] + cell;
    }
    return idx;
  }
  // heisenberg reduction: push x into [0,s) x [0,s) x [0,s^2) by right
  // translations
  double xr = x[0], yr = x[1], zr = x[2];
  const long m1 = -static_cast<long>(std::floor(xr / s));
  const long m2 = -static_cast<long>(std::floor(yr / s));
  zr += xr * (s * m2);
  xr += s * m1;
  yr += s * m2;
  const long m3 = -static_cast<long>(std::floor(zr / (s * s) + m1 * m2));
  zr += (m1 * m2 + m3) * s * s;
  const double fr[3] = {xr / s, yr / s, zr / (s * s)};
  for (int k = 0; k < 3; ++k) {
    double frac = fr[k] - std::floor(fr[k]);
    int cell = std::min<int>(resolution_[k] - 1, static_cast<int>(frac * resolution_[k]));
    idx = idx * resolution_[k] + cell;
  }
  return idx;
}

CoefficientField::Matrix CoefficientField::operator()(const Eigen::VectorXd& x) const {
  if (x.size() != lattice_.dim) throw ValidationError("evaluation point dimension mismatch");
  if (is_grid()) return cells_[cell_index(x)];
  return sampler_(x);
}

double CoefficientField::ellipticity(int samples_per_axis) const {
  std::call_once(mu_cache_->flag, [&] { mu_cache_->value = compute_mu(samples_per_axis); });
  return mu_cache_->value;
}

double CoefficientField::compute_mu(int samples_per_axis) const {
  double mu = std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Matrix> eig;
  auto visit = [&](const Eigen::VectorXd& x) {
    Matrix m = (*this)(x);
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
      throw ValidationError("coefficient matrix is not hermitian at " + point_str(x));
    eig.compute((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    mu = std::min(mu, eig.eigenvalues().minCoeff());
  };
  if (is_grid()) {
    Eigen::SelfAdjointEigenSolver<Matrix> e2;
    for (const auto& m : cells_) {
      if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError("coefficient grid contains a non-hermitian cell");
      e2.compute((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
      mu = std::min(mu, e2.eigenvalues().minCoeff());
    }
  } else {
    const int n = std::max(2, samples_per_axis);
    const int d = lattice_.dim;
    std::vector<int> iv(d, 0);
    const double s = lattice_.scale;
    while (true) {
      Eigen::VectorXd x(d);
      for (int k = 0; k < d; ++k) {
        double span = (lattice_.kind == LatticeKind::heisenberg && k == 2) ? s * s : s;
        x[k] = (iv[k] + 0.5) / n * span;
      }
      visit(x);
      int k = d - 1;
      while (k >= 0 && ++iv[k] == n) iv[k--] = 0;
      if (k < 0) break;
    }
  }
  return mu;
}

void CoefficientField::validate(int samples_per_axis, double tol) const {
  ellipticity(samples_per_axis);  // hermiticity sweep
  // periodicity under each lattice generator
  const int d = lattice_.dim;
  const int n = std::max(2, samples_per_axis);
  const double s = lattice_.scale;
  std::vector<int> iv(d, 0);
  while (true) {
    Eigen::VectorXd x(d);
    for (int k = 0; k < d; ++k) {
      double span = (lattice_.kind == LatticeKind::heisenberg && k == 2) ? s * s : s;
      x[k] = (iv[k] + 0.37) / n * span * 1.7 - 0.3 * span;  // straddle the cell
    }
    Matrix base = (*this)(x);
    for (int g = 0; g < lattice_.num_generators(); ++g) {
      std::vector<long> word(lattice_.num_generators(), 0);
      word[g] = 1;
      Matrix shifted = (*this)(lattice_.translate(x, word));
      double err = (base - shifted).cwiseAbs().maxCoeff();
      double scale_ref = std::max(1.0, base.cwiseAbs().maxCoeff());
      if (err > tol * scale_ref && !is_grid())
        throw ValidationError("field is not lattice periodic near " + point_str(x));
      if (is_grid() && err != 0.0)
        throw ValidationError("grid field periodicity is broken near " + point_str(x));
    }
    int k = d - 1;
    while (k >= 0 && ++iv[k] == n) iv[k--] = 0;
    if (k < 0) break;
  }
}

CoefficientField scale_epsilon(const CoefficientField& c, double eps) {
  if (!(eps > 0)) throw ValidationError("epsilon must be positive");
  Lattice lat = c.lattice();
  lat.scale *= eps;
  auto base = std::make_shared<CoefficientField>(c);
  const bool heis = lat.kind == LatticeKind::heisenberg;
  CoefficientField::Sampler sampler = [base, eps, heis](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = x / eps;
    if (heis) y[2] = x[2] / (eps * eps);  // delta_{1/eps} with weights (1,1,2)
    return (*base)(y);
  };
  return CoefficientField::from_sampler(lat, c.d1(), std::move(sampler));
}

Mollifier polynomial_bump(int dim) {
  Mollifier tau;
  tau.dim = dim;
  tau.profile = [](double t) {
    if (std::abs(t) >= 0.5) return 0.0;
    double u = 1.0 - 4.0 * t * t;
    return 35.0 / 16.0 * u * u * u;
  };
  return tau;
}

CoefficientField mollify(const CoefficientField& c, int n, const Mollifier& tau, int resolution) {
  if (n < 1) throw ValidationError("mollifier scale n must be positive");
  if (c.lattice().kind != LatticeKind::integer_flat)
    throw ValidationError("mollification is implemented for flat lattices");
  const int d = c.ambient_dim();
  if (tau.dim != d) throw ValidationError("mollifier dimension mismatch");

  // validate the per-axis profile: nonnegative, unit mass to 1e-8
  const int quad = 1 << 14;
  double mass = 0.0;
  for (int k = 0; k < quad; ++k) {
    double t = -0.5 + (k + 0.5) / quad;
    double v = tau.profile(t);
    if (v < 0) throw ValidationError("mollifier profile is negative");
    mass += v / quad;
  }
  if (std::abs(mass - 1.0) > 1e-8)
    throw ValidationError("mollifier mass is " + std::to_string(mass) + ", expected 1");

  std::vector<int> res;
  if (resolution > 0) {
    res.assign(d, resolution);
  } else if (c.is_grid()) {
    res = c.resolution();
  } else {
    res.assign(d, d == 1 ? 1024 : 128);
  }

  // sample the input on the target grid (cell midpoints)
  const double s = c.lattice().scale;
  long total = 1;
  for (int k = 0; k < d; ++k) total *= res[k];
  std::vector<CoefficientField::Matrix> cells(total);
  std::vector<int> iv(d, 0);
  for (long idx = 0; idx < total; ++idx) {
    Eigen::VectorXd x(d);
    for (int k = 0; k < d; ++k) x[k] = (iv[k] + 0.5) / res[k] * s;
    cells[idx] = c(x);
    int k = d - 1;
    while (k >= 0 && ++iv[k] == res[k]) iv[k--] = 0;
  }

  // per-axis discrete kernel at scale 1/n, normalized to unit sum
  std::vector<std::vector<double>> axis_w(d);
  for (int k = 0; k < d; ++k) {
    const double h = s / res[k];
    const int radius = std::max(0, static_cast<int>(std::ceil(s / (2.0 * n) / h)));
    std::vector<double> w(2 * radius + 1, 0.0);
    double sum = 0.0;
    for (int m = -radius; m <= radius; ++m) {
      double y = m * h;
      w[m + radius] = tau.profile(n * y / s) * n / s * h;
      sum += w[m + radius];
    }
    if (sum <= 0) throw ValidationError("mollifier kernel collapsed on the grid");
    for (double& v : w) v /= sum;
    axis_w[k] = std::move(w);
  }

  // separable periodic convolution, one axis at a time
  std::vector<CoefficientField::Matrix> conv = cells;
  std::vector<long> stride(d, 1);
  for (int k = d - 2; k >= 0; --k) stride[k] = stride[k + 1] * res[k + 1];
  for (int axis = 0; axis < d; ++axis) {
    const auto& w = axis_w[axis];
    const int radius = (static_cast<int>(w.size()) - 1) / 2;
    std::vector<CoefficientField::Matrix> next(total);
    for (long idx = 0; idx < total; ++idx) {
      long along = (idx / stride[axis]) % res[axis];
      CoefficientField::Matrix acc =
          CoefficientField::Matrix::Zero(c.d1(), c.d1());
      for (int m = -radius; m <= radius; ++m) {
        long shifted = (along - m) % res[axis];
        if (shifted < 0) shifted += res[axis];
        long src = idx + (shifted - along) * stride[axis];
        acc += w[m + radius] * conv[src];
      }
      next[idx] = std::move(acc);
    }
    conv = std::move(next);
  }
  return CoefficientField::from_grid(c.lattice(), c.d1(), res, std::move(conv));
}

void CoefficientField::save(const std::string& path) const {
  nlohmann::json j;
  j["lattice"] = lattice_.kind == LatticeKind::integer_flat ? "flat" : "heisenberg";
  j["dim"] = lattice_.dim;
  j["scale"] = lattice_.scale;
  j["d1"] = d1_;
  if (!is_grid()) throw ValidationError("only grid fields can be saved");
  j["resolution"] = resolution_;
  std::vector<double> data;
  data.reserve(cells_.size() * d1_ * d1_ * 2);
  for (const auto& m : cells_) {
    for (int i = 0; i < d1_; ++i) {
      for (int k = 0; k < d1_; ++k) {
        data.push_back(m(i, k).real());
        data.push_back(m(i, k).imag());
      }
    }
  }
  j["data"] = data;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write coefficient file " + path);
  out << j.dump();
}

CoefficientField CoefficientField::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open coefficient file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("bad coefficient file " + path + ": " + e.what());
  }
  try {
    Lattice lat;
    std::string kind = j.at("lattice");
    lat.kind = kind == "flat" ? LatticeKind::integer_flat : LatticeKind::heisenberg;
    if (kind != "flat" && kind != "heisenberg")
      throw ConfigError("unknown lattice kind " + kind);
    lat.dim = j.at("dim");
    lat.scale = j.value("scale", 1.0);
    int d1 = j.at("d1");
    std::vector<int> res = j.at("resolution");
    std::vector<double> data = j.at("data");
    long total = 1;
    for (int n : res) total *= n;
    if (static_cast<long>(data.size()) != total * d1 * d1 * 2)
      throw ConfigError("coefficient data length mismatch in " + path);
    std::vector<Matrix> cells(total);
    long pos = 0;
    for (long c = 0; c < total; ++c) {
      Matrix m(d1, d1);
      for (int i = 0; i < d1; ++i) {
        for (int k = 0; k < d1; ++k) {
          m(i, k) = std::complex<double>(data[pos], data[pos + 1]);
          pos += 2;
        }
      }
      cells[c] = std::move(m);
    }
    return from_grid(lat, d1, std::move(res), std::move(cells));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad coefficient file " + path + ": " + e.what());
  }
}

}  // namespace nilhom
