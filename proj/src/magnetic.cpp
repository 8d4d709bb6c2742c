#include "nilhom/magnetic.hpp"

#include <map>
#include <utility>

#include "nilhom/errors.hpp"

namespace nilhom {

namespace {

// Sparse coordinates of a PolyDiffOp over the (derivative, monomial) basis.
using Key = std::pair<Monomial, Monomial>;
using Coords = std::map<Key, ComplexRational>;

Coords coords_of(const PolyDiffOp& op) {
  Coords out;
  for (const auto& [deriv, poly] : op.terms()) {
    for (const auto& [mono, c] : poly.terms()) out[{deriv, mono}] = c;
  }
  return out;
}

PolyDiffOp op_of(int nvars, const Coords& coords) {
  PolyDiffOp op(nvars);
  for (const auto& [key, c] : coords) {
    Poly p(nvars);
    p.add_term(key.second, c);
    op.add_term(key.first, p);
  }
  return op;
}

// Exact row echelon over the Gaussian rationals, keyed by leading entry.
class Echelon {
 public:
  // Reduces v against the rows; returns the (possibly zero) residue.
  Coords reduce(Coords v) const {
    for (const auto& [pivot, row] : rows_) {
      auto it = v.find(pivot);
      if (it == v.end() || it->second.is_zero()) continue;
      ComplexRational f = it->second;
      for (const auto& [key, c] : row) {
        auto vt = v.emplace(key, ComplexRational(0)).first;
        vt->second -= f * c;
        if (vt->second.is_zero()) v.erase(vt);
      }
    }
    for (auto it = v.begin(); it != v.end();) {
      it = it->second.is_zero() ? v.erase(it) : std::next(it);
    }
    return v;
  }

  // Inserts the residue normalized to a unit pivot; v must be pre-reduced.
  void insert(Coords v) {
    ComplexRational lead = v.begin()->second;
    for (auto& [key, c] : v) c = c / lead;
    rows_[v.begin()->first] = std::move(v);
  }

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  std::map<Key, Coords> rows_;
};

int span_dimension(const std::vector<PolyDiffOp>& ops) {
  Echelon ech;
  for (const auto& op : ops) {
    auto r = ech.reduce(coords_of(op));
    if (!r.empty()) ech.insert(std::move(r));
  }
  return ech.rank();
}

}  // namespace

MagneticClosureReport magnetic_closure(const std::array<Poly, 3>& potential,
                                       const Rational& coupling) {
  constexpr int kMaxDim = 64;
  const int nvars = 3;
  for (const auto& a : potential) {
    if (a.nvars() != nvars) throw ValidationError("potential components need 3 variables");
  }

  MagneticClosureReport report;
  Echelon ech;
  std::vector<PolyDiffOp> basis;

  auto try_add = [&](const PolyDiffOp& op, bool keep_original) {
    auto r = ech.reduce(coords_of(op));
    if (r.empty()) return false;
    Coords stored = r;
    ComplexRational lead = stored.begin()->second;
    for (auto& [key, c] : stored) c = c / lead;
    ech.insert(std::move(r));
    basis.push_back(keep_original ? op : op_of(nvars, stored));
    return true;
  };

  const ComplexRational minus_i(Rational(0), Rational(-1));
  for (int i = 0; i < 3; ++i) {
    PolyDiffOp x = minus_i * PolyDiffOp::partial(nvars, i);
    x -= PolyDiffOp::multiplication(ComplexRational(coupling) * potential[i]);
    try_add(x, true);
  }

  // commutate until closed
  std::size_t frontier_begin = 0;
  while (frontier_begin < basis.size()) {
    std::size_t frontier_end = basis.size();
    for (std::size_t b = frontier_begin; b < frontier_end; ++b) {
      for (std::size_t a = 0; a < frontier_end; ++a) {
        PolyDiffOp c = basis[a].commutator(basis[b]);
        if (c.is_zero()) continue;
        try_add(c, false);
        if (static_cast<int>(basis.size()) > kMaxDim)
          throw SolverError("magnetic closure exceeded the basis cap");
      }
    }
    frontier_begin = frontier_end;
  }

  report.basis = basis;
  report.dimension = static_cast<int>(basis.size());

  // lower central series: g_(1) = g, g_(k+1) = [g, g_(k)]
  std::vector<PolyDiffOp> level = basis;
  report.central_series_dims.push_back(span_dimension(level));
  while (true) {
    std::vector<PolyDiffOp> next;
    for (const auto& g : basis) {
      for (const auto& h : level) {
        PolyDiffOp c = g.commutator(h);
        if (!c.is_zero()) next.push_back(std::move(c));
      }
    }
    int d = span_dimension(next);
    if (d == 0) break;
    report.central_series_dims.push_back(d);
    level = std::move(next);
  }
  report.step = static_cast<int>(report.central_series_dims.size());
  return report;
}

}  // namespace nilhom
