#include "nilhom/stratified.hpp"

#include <algorithm>
#include <stdexcept>

#include "nilhom/errors.hpp"
#include "nilhom/polynomial.hpp"

namespace nilhom {

StratifiedAlgebra::StratifiedAlgebra(
    std::vector<int> layer_dims,
    const std::vector<std::tuple<int, int, int, Rational>>& brackets)
    : layer_dims_(std::move(layer_dims)) {
  if (layer_dims_.empty()) throw ValidationError("algebra needs at least one layer");
  for (int k = 0; k < static_cast<int>(layer_dims_.size()); ++k) {
    if (layer_dims_[k] <= 0) throw ValidationError("layer dimensions must be positive");
    for (int c = 0; c < layer_dims_[k]; ++c) layer_of_.push_back(k + 1);
  }
  dim_ = static_cast<int>(layer_of_.size());
  for (const auto& [i, j, k, coeff] : brackets) {
    if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_)
      throw ValidationError("bracket index out of range");
    if (i == j) throw ValidationError("bracket [X_i, X_i] must not be specified");
    if (coeff == 0) continue;
    int a = i, b = j;
    Rational c = coeff;
    c.canonicalize();  // gmp arithmetic assumes canonical operands
    if (a > b) {
      std::swap(a, b);
      c = -c;
    }
    table_[{a, b}].emplace_back(k, c);
  }
  // merge duplicate (i, j, k) contributions
  for (auto& [ij, comps] : table_) {
    std::map<int, Rational> merged;
    for (auto& [k, c] : comps) merged[k] += c;
    comps.clear();
    for (auto& [k, c] : merged) {
      if (c != 0) comps.emplace_back(k, c);
    }
  }
  validate();
}

StratifiedAlgebra StratifiedAlgebra::heisenberg() {
  return StratifiedAlgebra({2, 1}, {{0, 1, 2, Rational(1)}});
}

StratifiedAlgebra StratifiedAlgebra::abelian(int d) {
  return StratifiedAlgebra(std::vector<int>{d}, {});
}

Rational StratifiedAlgebra::structure_const(int i, int j, int k) const {
  if (i == j) return Rational(0);
  Rational sign(1);
  int a = i, b = j;
  if (a > b) {
    std::swap(a, b);
    sign = -1;
  }
  auto it = table_.find({a, b});
  if (it == table_.end()) return Rational(0);
  for (const auto& [kk, c] : it->second) {
    if (kk == k) return Rational(sign * c);
  }
  return Rational(0);
}

namespace {

std::vector<Rational> bracket_q(const StratifiedAlgebra& a, const std::vector<Rational>& u,
                                const std::vector<Rational>& v) {
  std::vector<Rational> out(u.size(), Rational(0));
  const int d = static_cast<int>(u.size());
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Rational uv(u[i] * v[j] - u[j] * v[i]);
      if (uv == 0) continue;
      for (int k = 0; k < d; ++k) {
        Rational c = a.structure_const(i, j, k);
        if (c != 0) out[k] += c * uv;
      }
    }
  }
  return out;
}

// Exact row echelon over the rationals; returns rank.  Rows are modified.
int echelon_rank(std::vector<std::vector<Rational>>& rows) {
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  int rank = 0;
  for (int col = 0; col < cols; ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f(rows[r][col] / rows[rank][col]);
      for (int c = col; c < cols; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
    if (rank == static_cast<int>(rows.size())) break;
  }
  return rank;
}

}  // namespace

void StratifiedAlgebra::validate() const {
  const int d = dim_;
  // grading: [g^(wi), g^(wj)] lands in g^(wi+wj)
  for (const auto& [ij, comps] : table_) {
    const auto [i, j] = ij;
    const int target = weight(i) + weight(j);
    for (const auto& [k, c] : comps) {
      if (c == 0) continue;
      if (target > step() || weight(k) != target)
        throw ValidationError("structure constants violate the grading");
    }
  }
  // Jacobi on basis triples, exact
  std::vector<std::vector<Rational>> basis(d, std::vector<Rational>(d, Rational(0)));
  for (int i = 0; i < d; ++i) basis[i][i] = 1;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (int k = j + 1; k < d; ++k) {
        auto t1 = bracket_q(*this, basis[i], bracket_q(*this, basis[j], basis[k]));
        auto t2 = bracket_q(*this, basis[j], bracket_q(*this, basis[k], basis[i]));
        auto t3 = bracket_q(*this, basis[k], bracket_q(*this, basis[i], basis[j]));
        for (int m = 0; m < d; ++m) {
          if (t1[m] + t2[m] + t3[m] != 0) throw ValidationError("Jacobi identity fails");
        }
      }
    }
  }
  // the first layer generates: iterated brackets of g^(1) span everything
  std::vector<std::vector<Rational>> span;
  for (int i = 0; i < layer_dims_[0]; ++i) span.push_back(basis[i]);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<Rational>> candidates = span;
    for (const auto& v : span) {
      for (int i = 0; i < layer_dims_[0]; ++i) {
        candidates.push_back(bracket_q(*this, basis[i], v));
      }
    }
    auto probe = candidates;
    int new_rank = echelon_rank(probe);
    auto old = span;
    int old_rank = echelon_rank(old);
    if (new_rank > old_rank) {
      grew = true;
      span = std::move(candidates);
    }
  }
  int rank = echelon_rank(span);
  if (rank != d) throw ValidationError("first layer does not generate the algebra");
}

int homogeneous_dimension(const StratifiedAlgebra& a) {
  int D = 0;
  const auto& dims = a.layer_dims();
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) D += (k + 1) * dims[k];
  return D;
}

namespace {

struct DynkinTerm {
  std::vector<bool> word;  // true = first argument, false = second
  Rational coeff;
};

// All Dynkin terms of total degree <= cap:
//   H(X,Y) = sum_n (-1)^(n-1)/n sum_{p_i+q_i>0}
//            [X^(p1) Y^(q1) ... X^(pn) Y^(qn)] / (T prod p_i! q_i!),
// with T the total letter count and the bracket right-nested.
void extend_blocks(int cap, std::vector<bool>& word, int n_blocks, const Rational& denom,
                   std::vector<DynkinTerm>& out) {
  if (n_blocks >= 1 && !word.empty()) {
    const long T = static_cast<long>(word.size());
    Rational div(static_cast<long>(n_blocks));
    div *= Rational(T);
    div *= denom;
    Rational c(1);
    c /= div;
    if (n_blocks % 2 == 0) c = -c;
    // words whose last two letters agree bracket to zero
    const std::size_t m = word.size();
    if (m < 2 || word[m - 1] != word[m - 2]) out.push_back({word, c});
  }
  const int used = static_cast<int>(word.size());
  if (used >= cap) return;
  auto factorial = [](int n) {
    long f = 1;
    for (int t = 2; t <= n; ++t) f *= t;
    return f;
  };
  for (int p = 0; p <= cap - used; ++p) {
    for (int q = 0; p + q <= cap - used; ++q) {
      if (p + q == 0) continue;
      word.resize(static_cast<std::size_t>(used));
      for (int t = 0; t < p; ++t) word.push_back(true);
      for (int t = 0; t < q; ++t) word.push_back(false);
      extend_blocks(cap, word, n_blocks + 1, Rational(denom * Rational(factorial(p) * factorial(q))),
                    out);
    }
  }
  word.resize(static_cast<std::size_t>(used));
}

std::vector<DynkinTerm> dynkin_terms(int cap) {
  std::vector<DynkinTerm> out;
  std::vector<bool> word;
  extend_blocks(cap, word, 0, Rational(1), out);
  return out;
}

}  // namespace

template <class Ring>
std::vector<Ring> bch_series(const StratifiedAlgebra& a, const std::vector<Ring>& u,
                             const std::vector<Ring>& v) {
  if (static_cast<int>(u.size()) != a.dim() || static_cast<int>(v.size()) != a.dim())
    throw ValidationError("group point dimension mismatch");
  std::vector<Ring> acc;
  acc.reserve(a.dim());
  for (int k = 0; k < a.dim(); ++k) acc.push_back(u[k] + v[k]);
  for (const auto& term : dynkin_terms(a.step())) {
    if (term.word.size() < 2) continue;  // degree-1 terms already in u + v
    const auto& w = term.word;
    std::vector<Ring> cur = w.back() ? u : v;
    for (int idx = static_cast<int>(w.size()) - 2; idx >= 0; --idx) {
      cur = a.bracket(w[idx] ? u : v, cur);
    }
    for (int k = 0; k < a.dim(); ++k) acc[k] += ComplexRational(term.coeff) * cur[k];
  }
  return acc;
}

template std::vector<ComplexRational> bch_series(const StratifiedAlgebra&,
                                                 const std::vector<ComplexRational>&,
                                                 const std::vector<ComplexRational>&);
template std::vector<Poly> bch_series(const StratifiedAlgebra&, const std::vector<Poly>&,
                                      const std::vector<Poly>&);

GroupPointQ bch_product(const StratifiedAlgebra& a, const GroupPointQ& u, const GroupPointQ& v) {
  std::vector<ComplexRational> cu(u.begin(), u.end()), cv(v.begin(), v.end());
  auto w = bch_series(a, cu, cv);
  GroupPointQ out;
  out.reserve(w.size());
  for (auto& c : w) out.push_back(c.re);
  return out;
}

GroupPoint bch_product(const StratifiedAlgebra& a, const GroupPoint& u, const GroupPoint& v) {
  GroupPointQ qu, qv;
  qu.reserve(u.size());
  qv.reserve(v.size());
  for (double x : u) qu.emplace_back(x);
  for (double x : v) qv.emplace_back(x);
  auto w = bch_product(a, qu, qv);
  GroupPoint out;
  out.reserve(w.size());
  for (auto& q : w) out.push_back(q.get_d());
  return out;
}

GroupPointQ dilate(const StratifiedAlgebra& a, const Rational& eps, const GroupPointQ& u) {
  if (eps <= 0) throw ValidationError("dilation parameter must be positive");
  if (static_cast<int>(u.size()) != a.dim())
    throw ValidationError("group point dimension mismatch");
  GroupPointQ out(u);
  for (int k = 0; k < a.dim(); ++k) {
    Rational f(1);
    for (int t = 0; t < a.weight(k); ++t) f *= eps;
    out[k] *= f;
  }
  return out;
}

GroupPoint dilate(const StratifiedAlgebra& a, double eps, const GroupPoint& u) {
  if (!(eps > 0)) throw ValidationError("dilation parameter must be positive");
  GroupPointQ qu;
  qu.reserve(u.size());
  for (double x : u) qu.emplace_back(x);
  auto w = dilate(a, Rational(eps), qu);
  GroupPoint out;
  out.reserve(w.size());
  for (auto& q : w) out.push_back(q.get_d());
  return out;
}

}  // namespace nilhom
