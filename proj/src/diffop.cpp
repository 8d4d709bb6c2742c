#include "nilhom/diffop.hpp"

#include <functional>
#include <stdexcept>

namespace nilhom {

PolyDiffOp PolyDiffOp::multiplication(const Poly& p) {
  PolyDiffOp op(p.nvars());
  op.add_term(Monomial(p.nvars(), 0), p);
  return op;
}

PolyDiffOp PolyDiffOp::partial(int nvars, int var) {
  PolyDiffOp op(nvars);
  Monomial d(nvars, 0);
  d.at(var) = 1;
  op.add_term(d, Poly::constant(nvars, ComplexRational(1)));
  return op;
}

int PolyDiffOp::max_order() const {
  int order = 0;
  for (const auto& [d, p] : terms_) {
    int k = 0;
    for (unsigned e : d) k += static_cast<int>(e);
    order = std::max(order, k);
  }
  return order;
}

void PolyDiffOp::add_term(const Monomial& deriv, const Poly& coeff) {
  if (static_cast<int>(deriv.size()) != nvars_ || coeff.nvars() != nvars_)
    throw std::invalid_argument("diffop term dimension mismatch");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(deriv, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PolyDiffOp& PolyDiffOp::operator+=(const PolyDiffOp& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("diffop variable count mismatch");
  for (const auto& [d, p] : o.terms_) add_term(d, p);
  return *this;
}

PolyDiffOp& PolyDiffOp::operator-=(const PolyDiffOp& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("diffop variable count mismatch");
  for (const auto& [d, p] : o.terms_) add_term(d, -p);
  return *this;
}

PolyDiffOp operator*(const ComplexRational& c, const PolyDiffOp& op) {
  PolyDiffOp out(op.nvars_);
  if (c.is_zero()) return out;
  for (const auto& [d, p] : op.terms_) out.add_term(d, c * p);
  return out;
}

Poly PolyDiffOp::apply(const Poly& f) const {
  Poly out(nvars_);
  for (const auto& [d, p] : terms_) {
    Poly g = f;
    for (int v = 0; v < nvars_ && !g.is_zero(); ++v) {
      for (unsigned k = 0; k < d[v]; ++k) g = g.derivative(v);
    }
    out += p * g;
  }
  return out;
}

namespace {

// Enumerate gamma <= alpha componentwise together with binom(alpha, gamma).
void leibniz_splits(const Monomial& alpha, int var, Monomial& gamma, Rational coeff,
                    const std::function<void(const Monomial&, const Rational&)>& emit) {
  if (var == static_cast<int>(alpha.size())) {
    emit(gamma, coeff);
    return;
  }
  Rational binom(1);
  for (unsigned g = 0; g <= alpha[var]; ++g) {
    gamma[var] = g;
    leibniz_splits(alpha, var + 1, gamma, Rational(coeff * binom), emit);
    // binom(alpha_v, g+1) = binom(alpha_v, g) * (alpha_v - g) / (g + 1)
    binom *= Rational(static_cast<long>(alpha[var] - g));
    binom /= Rational(static_cast<long>(g + 1));
  }
  gamma[var] = 0;
}

}  // namespace

PolyDiffOp PolyDiffOp::compose(const PolyDiffOp& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("diffop variable count mismatch");
  PolyDiffOp out(nvars_);
  for (const auto& [alpha, p] : terms_) {
    for (const auto& [beta, q] : o.terms_) {
      // d^alpha (q d^beta .) = sum_{gamma<=alpha} binom(alpha,gamma)
      //                        (d^{alpha-gamma} q) d^{gamma+beta} .
      Monomial gamma(nvars_, 0);
      leibniz_splits(alpha, 0, gamma, Rational(1),
                     [&](const Monomial& g, const Rational& binom) {
                       Poly dq = q;
                       for (int v = 0; v < nvars_; ++v) {
                         for (unsigned k = 0; k < alpha[v] - g[v] && !dq.is_zero(); ++k)
                           dq = dq.derivative(v);
                       }
                       if (dq.is_zero()) return;
                       Monomial target(nvars_);
                       for (int v = 0; v < nvars_; ++v) target[v] = g[v] + beta[v];
                       out.add_term(target, ComplexRational(binom) * (p * dq));
                     });
    }
  }
  return out;
}

PolyDiffOp PolyDiffOp::commutator(const PolyDiffOp& o) const {
  return compose(o) - o.compose(*this);
}

std::string PolyDiffOp::str(const std::vector<std::string>& var_names) const {
  if (terms_.empty()) return "0";
  auto name = [&](int v) {
    if (v < static_cast<int>(var_names.size())) return var_names[v];
    return "x" + std::to_string(v + 1);
  };
  std::string out;
  for (const auto& [d, p] : terms_) {
    if (!out.empty()) out += " + ";
    std::string ds;
    for (int v = 0; v < nvars_; ++v) {
      for (unsigned k = 0; k < d[v]; ++k) {
        if (!ds.empty()) ds += "*";
        ds += "d_" + name(v);
      }
    }
    if (ds.empty()) {
      out += "(" + p.str(var_names) + ")";
    } else if (p == Poly::constant(nvars_, ComplexRational(1))) {
      out += ds;
    } else {
      out += "(" + p.str(var_names) + ")*" + ds;
    }
  }
  return out;
}

}  // namespace nilhom
