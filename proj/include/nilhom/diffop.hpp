#pragma once

#include <map>
#include <string>

#include "nilhom/polynomial.hpp"

namespace nilhom {

/// Linear differential operator with polynomial coefficients,
///   P = sum_a p_a(x) * d^a,
/// where a runs over derivative multi-indices; the all-zero index is the
/// multiplication (zeroth-order) part.  Composition follows the Leibniz
/// rule, so commutators of such operators stay in this class.
class PolyDiffOp {
 public:
  explicit PolyDiffOp(int nvars = 0) : nvars_(nvars) {}

  static PolyDiffOp multiplication(const Poly& p);
  static PolyDiffOp partial(int nvars, int var);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Poly>& terms() const { return terms_; }
  int max_order() const;

  void add_term(const Monomial& deriv, const Poly& coeff);

  PolyDiffOp& operator+=(const PolyDiffOp& o);
  PolyDiffOp& operator-=(const PolyDiffOp& o);
  friend PolyDiffOp operator+(PolyDiffOp a, const PolyDiffOp& b) { return a += b; }
  friend PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp& b) { return a -= b; }
  friend PolyDiffOp operator*(const ComplexRational& c, const PolyDiffOp& op);
  friend bool operator==(const PolyDiffOp& a, const PolyDiffOp& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Poly apply(const Poly& f) const;
  PolyDiffOp compose(const PolyDiffOp& o) const;
  PolyDiffOp commutator(const PolyDiffOp& o) const;

  std::string str(const std::vector<std::string>& var_names = {}) const;

 private:
  int nvars_;
  std::map<Monomial, Poly> terms_;
};

}  // namespace nilhom
