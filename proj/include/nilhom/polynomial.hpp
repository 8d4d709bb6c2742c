#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilhom/rational.hpp"

namespace nilhom {

/// Exponent vector, one entry per variable.
using Monomial = std::vector<unsigned>;

/// Multivariate polynomial with exact complex-rational coefficients.
/// The number of variables is fixed at construction; all arithmetic
/// requires matching variable counts.
class Poly {
 public:
  explicit Poly(int nvars = 0) : nvars_(nvars) {}

  static Poly constant(int nvars, const ComplexRational& c);
  static Poly variable(int nvars, int index);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  ComplexRational constant_value() const;  // 0 if no constant term
  const std::map<Monomial, ComplexRational>& terms() const { return terms_; }
  int total_degree() const;

  void add_term(const Monomial& m, const ComplexRational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const ComplexRational& c, const Poly& p);
  friend Poly operator-(const Poly& p) { return ComplexRational(-1) * p; }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative(int var) const;
  /// Substitute var := 0.
  Poly without_var(int var) const;
  /// Move to a new variable space; var_map[old] = new index or -1 (the
  /// variable must then not occur).
  Poly remap(int new_nvars, const std::vector<int>& var_map) const;

  ComplexRational eval(const std::vector<ComplexRational>& x) const;
  double eval_real(const std::vector<double>& x) const;

  std::string str(const std::vector<std::string>& var_names = {}) const;

 private:
  int nvars_;
  std::map<Monomial, ComplexRational> terms_;
};

}  // namespace nilhom
