#include "nilhom/polynomial.hpp"

#include <stdexcept>

namespace nilhom {

namespace {
void require_same_space(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("polynomial variable count mismatch");
}
}  // namespace

Poly Poly::constant(int nvars, const ComplexRational& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int index) {
  Poly p(nvars);
  Monomial m(nvars, 0);
  m.at(index) = 1;
  p.add_term(m, ComplexRational(1));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first == Monomial(nvars_, 0));
}

ComplexRational Poly::constant_value() const {
  auto it = terms_.find(Monomial(nvars_, 0));
  return it == terms_.end() ? ComplexRational(0) : it->second;
}

int Poly::total_degree() const {
  int deg = 0;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (unsigned e : m) d += static_cast<int>(e);
    deg = std::max(deg, d);
  }
  return deg;
}

void Poly::add_term(const Monomial& m, const ComplexRational& c) {
  if (static_cast<int>(m.size()) != nvars_) throw std::invalid_argument("monomial size mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  require_same_space(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_space(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_space(a, b);
  Poly out(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m(ma);
      for (int v = 0; v < a.nvars_; ++v) m[v] += mb[v];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Poly operator*(const ComplexRational& c, const Poly& p) {
  Poly out(p.nvars_);
  if (c.is_zero()) return out;
  for (const auto& [m, pc] : p.terms_) out.add_term(m, c * pc);
  return out;
}

Poly Poly::derivative(int var) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d(m);
    --d[var];
    out.add_term(d, ComplexRational(Rational(static_cast<long>(m[var]))) * c);
  }
  return out;
}

Poly Poly::without_var(int var) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) out.add_term(m, c);
  }
  return out;
}

Poly Poly::remap(int new_nvars, const std::vector<int>& var_map) const {
  Poly out(new_nvars);
  for (const auto& [m, c] : terms_) {
    Monomial t(new_nvars, 0);
    for (int v = 0; v < nvars_; ++v) {
      if (m[v] == 0) continue;
      if (var_map[v] < 0) throw std::invalid_argument("remap drops an occurring variable");
      t[var_map[v]] += m[v];
    }
    out.add_term(t, c);
  }
  return out;
}

ComplexRational Poly::eval(const std::vector<ComplexRational>& x) const {
  ComplexRational acc(0);
  for (const auto& [m, c] : terms_) {
    ComplexRational t = c;
    for (int v = 0; v < nvars_; ++v) {
      for (unsigned k = 0; k < m[v]; ++k) t *= x[v];
    }
    acc += t;
  }
  return acc;
}

double Poly::eval_real(const std::vector<double>& x) const {
  std::vector<ComplexRational> q;
  q.reserve(x.size());
  for (double v : x) q.emplace_back(Rational(v));
  return eval(q).real_d();
}

std::string Poly::str(const std::vector<std::string>& var_names) const {
  if (terms_.empty()) return "0";
  auto name = [&](int v) {
    if (v < static_cast<int>(var_names.size())) return var_names[v];
    return "x" + std::to_string(v + 1);
  };
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (int v = 0; v < nvars_; ++v) {
      if (m[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += name(v);
      if (m[v] > 1) mono += "^" + std::to_string(m[v]);
    }
    bool plain_one = (c == ComplexRational(1));
    if (mono.empty()) {
      out += "(" + c.str() + ")";
    } else if (plain_one) {
      out += mono;
    } else {
      out += "(" + c.str() + ")*" + mono;
    }
  }
  return out;
}

}  // namespace nilhom
