// Test-only oracles, independent of the library's solution paths:
// quadrature, closed forms, brute-force enumeration.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// Composite Simpson on [a, b] with n panels (n even).
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 4096) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int k = 1; k < n; ++k) acc += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

/// Harmonic mean (1/p0 int_0^p0 dx/c)^-1 of a positive period-p0 profile.
inline double harmonic_mean(const std::function<double(double)>& c, double p0 = 1.0) {
  return p0 / simpson([&](double x) { return 1.0 / c(x); }, 0.0, p0);
}

inline double arithmetic_mean(const std::function<double(double)>& c, double p0 = 1.0) {
  return simpson(c, 0.0, p0) / p0;
}

/// Periodic heat kernel on a circle of circumference L with diffusion
/// coefficient chat: wrapped Gaussian.
inline double wrapped_gaussian(double x, double y, double t, double chat, double L) {
  double acc = 0.0;
  for (int m = -40; m <= 40; ++m) {
    double d = x - y + m * L;
    acc += std::exp(-d * d / (4.0 * chat * t));
  }
  return acc / std::sqrt(4.0 * M_PI * chat * t);
}

/// Sorted eigenvalues (2 pi n + theta)^2 of the free 1D fiber.
inline std::vector<double> free_fiber_eigenvalues(double theta, int count, int box = 64) {
  std::vector<double> values;
  for (int n = -box; n <= box; ++n) {
    double k = 2.0 * M_PI * n + theta;
    values.push_back(k * k);
  }
  std::sort(values.begin(), values.end());
  values.resize(count);
  return values;
}

/// Dense application of the conservative three-point scheme
/// (H u)_k = -[c_k (u_{k+1}-u_k) - c_{k-1}(u_k - u_{k-1})]/h^2
/// with c sampled at the right-edge midpoints c_k = c(x_k + h/2).
inline std::vector<double> divergence_stencil_1d(const std::vector<double>& c_edge,
                                                 const std::vector<double>& u, double h) {
  const int n = static_cast<int>(u.size());
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) {
    const int prev = (k + n - 1) % n;
    const int next = (k + 1) % n;
    out[k] = -(c_edge[k] * (u[next] - u[k]) - c_edge[prev] * (u[k] - u[prev])) / (h * h);
  }
  return out;
}

}  // namespace oracle
