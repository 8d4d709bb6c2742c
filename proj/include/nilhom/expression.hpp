#pragma once

#include <memory>
#include <string>
#include <vector>

namespace nilhom {

/// Closed-form scalar expression in up to three position variables.
/// Grammar: numbers, pi, x/y/z (aliases x1/x2/x3), + - * / ^, sin, cos,
/// comparisons (evaluating to 1 or 0), and piecewise(cond, a, b).
/// Example: "2 + sin(2*pi*x)", "piecewise(x < 0.5, 1, 4)".
class Expression {
 public:
  static Expression parse(const std::string& text, int dim);

  double operator()(const double* x) const;
  double operator()(const std::vector<double>& x) const { return (*this)(x.data()); }
  int dim() const { return dim_; }
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  int dim_ = 0;
  std::string text_;
};

}  // namespace nilhom
