#include "nilhom/chart.hpp"

#include "nilhom/errors.hpp"

namespace nilhom {

GroupChart exponential_chart(const StratifiedAlgebra& a) {
  const int d = a.dim();
  GroupChart chart;
  chart.dim = d;
  std::vector<Poly> u, v;
  for (int k = 0; k < d; ++k) u.push_back(Poly::variable(2 * d, k));
  for (int k = 0; k < d; ++k) v.push_back(Poly::variable(2 * d, d + k));
  chart.law = bch_series(a, u, v);
  for (int k = 0; k < d; ++k) chart.to_exponential.push_back(Poly::variable(d, k));
  return chart;
}

GroupChart heisenberg_matrix_chart() {
  GroupChart chart;
  chart.dim = 3;
  auto u = [&](int k) { return Poly::variable(6, k); };
  auto v = [&](int k) { return Poly::variable(6, 3 + k); };
  chart.law = {u(0) + v(0), u(1) + v(1), u(2) + v(2) + u(0) * v(1)};
  // matrix coords (x, y, z) correspond to exp coords (x, y, z - x*y/2)
  Poly x = Poly::variable(3, 0), y = Poly::variable(3, 1), z = Poly::variable(3, 2);
  chart.to_exponential = {x, y, z - ComplexRational(Rational(1, 2)) * (x * y)};
  return chart;
}

std::vector<PolyDiffOp> invariant_fields(const GroupChart& chart, Side side) {
  const int d = chart.dim;
  std::vector<PolyDiffOp> fields;
  fields.reserve(d);
  // var_map keeps only the surviving block of the law's 2d variables
  std::vector<int> var_map(2 * d, -1);
  for (int k = 0; k < d; ++k) {
    var_map[side == Side::left ? d + k : k] = k;
  }
  for (int i = 0; i < d; ++i) {
    PolyDiffOp field(d);
    const int t_var = (side == Side::left) ? i : d + i;
    for (int k = 0; k < d; ++k) {
      Poly coeff = chart.law[k].derivative(t_var);
      // evaluate the curve parameter block at the identity
      for (int m = 0; m < d; ++m) {
        const int dead = (side == Side::left) ? m : d + m;
        coeff = coeff.without_var(dead);
      }
      if (coeff.is_zero()) continue;
      Monomial partial(d, 0);
      partial[k] = 1;
      field.add_term(partial, coeff.remap(d, var_map));
    }
    fields.push_back(std::move(field));
  }
  return fields;
}

std::vector<PolyDiffOp> invariant_fields(const StratifiedAlgebra& a, Side side) {
  return invariant_fields(exponential_chart(a), side);
}

std::vector<Poly> coordinate_functions(const GroupChart& chart, int d1) {
  if (d1 < 0 || d1 > chart.dim) throw ValidationError("first layer size out of range");
  return {chart.to_exponential.begin(), chart.to_exponential.begin() + d1};
}

std::vector<Poly> coordinate_functions(const StratifiedAlgebra& a) {
  return coordinate_functions(exponential_chart(a), a.first_layer_dim());
}

std::vector<double> chart_product(const GroupChart& chart, const std::vector<double>& u,
                                  const std::vector<double>& v) {
  const int d = chart.dim;
  if (static_cast<int>(u.size()) != d || static_cast<int>(v.size()) != d)
    throw ValidationError("chart point dimension mismatch");
  std::vector<double> uv;
  uv.reserve(2 * d);
  uv.insert(uv.end(), u.begin(), u.end());
  uv.insert(uv.end(), v.begin(), v.end());
  std::vector<double> out(d);
  for (int k = 0; k < d; ++k) out[k] = chart.law[k].eval_real(uv);
  return out;
}

}  // namespace nilhom
