// SPDX-License-Identifier: MIT
//
// Truncated matrix model of the quantum polynomial algebra on monomials.
//
// Operators act on the span of z^m = z_n^{m_n} ... z_1^{m_1} with |m| bounded
// by a degree cutoff.  Truncation is unavoidable, so every operator carries
// the largest input degree on which its matrix still agrees with the
// untruncated action; residual reports read only those columns.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qball/context.hpp"
#include "qball/qseries.hpp"

namespace qball {

namespace detail {

// Weights live in (0, infinity]; infinity selects the flat (Fock) case.
inline void require_weight(double alpha) {
  if (std::isnan(alpha) || alpha <= 0.0) {
    throw std::domain_error("weight parameter must lie in (0, infinity]");
  }
}

inline void require_generator_index(int i, int n) {
  if (i < 1 || i > n) throw std::domain_error("generator index out of range");
}

}  // namespace detail

// Monomial multi-indices with |m| <= max_degree, ordered by total degree and
// then lexicographically in (m_1, ..., m_n).  The ordering is part of the
// interface and identical across runs.
class MonomialBasis {
 public:
  // max_degree 0 picks the default cutoff.
  explicit MonomialBasis(const QContext& ctx, int max_degree = 0)
      : ctx_(ctx),
        max_degree_(max_degree > 0 ? max_degree : default_degree(ctx.n)) {
    std::vector<int> m(static_cast<std::size_t>(ctx_.n), 0);
    for (int d = 0; d <= max_degree_; ++d) emit(m, 0, d, d);
  }

  // Cost of the oracle grows as binomial(max_degree + n, n)^2, so the cutoff
  // shrinks with the dimension.
  static int default_degree(int n) { return n <= 2 ? 8 : 6; }

  const QContext& ctx() const { return ctx_; }
  int n() const { return ctx_.n; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return exponents_.size(); }

  const std::vector<int>& exponent(std::size_t idx) const {
    return exponents_.at(idx);
  }
  int degree(std::size_t idx) const { return degrees_.at(idx); }

  bool contains(const std::vector<int>& m) const {
    return lookup_.find(m) != lookup_.end();
  }

  std::size_t index(const std::vector<int>& m) const {
    const auto it = lookup_.find(m);
    if (it == lookup_.end()) {
      throw std::domain_error("monomial lies outside the basis cutoff");
    }
    return it->second;
  }

 private:
  void emit(std::vector<int>& m, std::size_t slot, int remaining, int total) {
    if (slot + 1 == m.size()) {
      m[slot] = remaining;
      lookup_.emplace(m, exponents_.size());
      exponents_.push_back(m);
      degrees_.push_back(total);
      m[slot] = 0;
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      m[slot] = v;
      emit(m, slot + 1, remaining - v, total);
    }
    m[slot] = 0;
  }

  QContext ctx_;
  int max_degree_;
  std::vector<std::vector<int>> exponents_;
  std::vector<int> degrees_;
  std::map<std::vector<int>, std::size_t> lookup_;
};

// Dense matrix of an algebra element together with truncation bookkeeping.
//
//   raise        upper bound on how much the element raises total degree;
//   safe_degree  largest input degree whose column is unaffected by the
//                cutoff.  Products and sums propagate both fields, so any
//                expression knows where its matrix can be trusted.
class FockOperator {
 public:
  FockOperator(const MonomialBasis& basis, int raise, int safe_degree)
      : basis_(&basis),
        raise_(raise),
        safe_degree_(safe_degree),
        data_(basis.size() * basis.size()) {}

  static FockOperator identity(const MonomialBasis& basis) {
    FockOperator out(basis, 0, basis.max_degree());
    for (std::size_t i = 0; i < basis.size(); ++i) out.at(i, i) = 1.0;
    return out;
  }

  const MonomialBasis& basis() const { return *basis_; }
  int raise() const { return raise_; }
  int safe_degree() const { return safe_degree_; }

  std::complex<double>& at(std::size_t row, std::size_t col) {
    return data_[row * basis_->size() + col];
  }
  std::complex<double> at(std::size_t row, std::size_t col) const {
    return data_[row * basis_->size() + col];
  }

  friend FockOperator operator*(const FockOperator& a, const FockOperator& b) {
    require_same_basis(a, b);
    // b acts first: inputs must be safe for b, and b's output degree must
    // stay within a's trusted range.
    FockOperator out(*a.basis_, a.raise_ + b.raise_,
                     std::min(b.safe_degree_, a.safe_degree_ - b.raise_));
    const std::size_t N = a.basis_->size();
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < N; ++k) {
        const std::complex<double> w = a.data_[i * N + k];
        if (w == std::complex<double>(0.0)) continue;
        const std::complex<double>* brow = &b.data_[k * N];
        std::complex<double>* orow = &out.data_[i * N];
        for (std::size_t j = 0; j < N; ++j) orow[j] += w * brow[j];
      }
    }
    return out;
  }

  friend FockOperator operator+(const FockOperator& a, const FockOperator& b) {
    return combine(a, b, 1.0);
  }
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b) {
    return combine(a, b, -1.0);
  }
  friend FockOperator operator*(double s, const FockOperator& a) {
    FockOperator out = a;
    for (auto& v : out.data_) v *= s;
    return out;
  }

 private:
  static void require_same_basis(const FockOperator& a, const FockOperator& b) {
    if (a.basis_ != b.basis_) {
      throw std::domain_error("operators live on different bases");
    }
  }

  static FockOperator combine(const FockOperator& a, const FockOperator& b,
                              double sign) {
    require_same_basis(a, b);
    FockOperator out(*a.basis_, std::max(a.raise_, b.raise_),
                     std::min(a.safe_degree_, b.safe_degree_));
    for (std::size_t t = 0; t < a.data_.size(); ++t) {
      out.data_[t] = a.data_[t] + sign * b.data_[t];
    }
    return out;
  }

  const MonomialBasis* basis_;
  int raise_;
  int safe_degree_;
  std::vector<std::complex<double>> data_;
};

// Largest entry magnitude over the columns the truncation represents exactly.
inline double safe_max_abs(const FockOperator& op) {
  if (op.safe_degree() < 0) {
    throw std::domain_error("operator has no exactly represented columns");
  }
  const MonomialBasis& basis = op.basis();
  double worst = 0.0;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    if (basis.degree(col) > op.safe_degree()) continue;
    for (std::size_t row = 0; row < basis.size(); ++row) {
      worst = std::max(worst, std::abs(op.at(row, col)));
    }
  }
  return worst;
}

// Left multiplication by z_i:  z^m -> q^{m_{i+1} + ... + m_n} z^{m + e_i}.
// The action is weight independent; alpha is validated only so that the
// builder pair shares one signature.
inline FockOperator build_creation(int i, double alpha,
                                   const MonomialBasis& basis) {
  detail::require_generator_index(i, basis.n());
  detail::require_weight(alpha);
  const double q = basis.ctx().q;
  FockOperator op(basis, 1, basis.max_degree() - 1);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const std::vector<int>& m = basis.exponent(col);
    std::vector<int> up = m;
    up[static_cast<std::size_t>(i - 1)] += 1;
    if (!basis.contains(up)) continue;  // top degree block maps out of range
    int sigma = 0;
    for (std::size_t j = static_cast<std::size_t>(i); j < m.size(); ++j) {
      sigma += m[j];
    }
    op.at(basis.index(up), col) = std::pow(q, sigma);
  }
  return op;
}

// Adjoint generator:
//   z^m -> q^{m_{i+1} + ... + m_n} (1 - q^{2 m_i}) / (1 - q^{2|m| + 2n + 2a})
//          z^{m - e_i},
// and the denominator degenerates to 1 in the flat case (q^inf = 0 keeps a
// single code path).
inline FockOperator build_annihilation(int i, double alpha,
                                       const MonomialBasis& basis) {
  detail::require_generator_index(i, basis.n());
  detail::require_weight(alpha);
  const QContext& ctx = basis.ctx();
  const double q = ctx.q;
  FockOperator op(basis, -1, basis.max_degree());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const std::vector<int>& m = basis.exponent(col);
    const std::size_t slot = static_cast<std::size_t>(i - 1);
    if (m[slot] == 0) continue;
    std::vector<int> down = m;
    down[slot] -= 1;
    int sigma = 0;
    for (std::size_t j = static_cast<std::size_t>(i); j < m.size(); ++j) {
      sigma += m[j];
    }
    const double num = 1.0 - std::pow(q, 2.0 * m[slot]);
    const double den =
        1.0 - std::pow(q, 2.0 * basis.degree(col) + 2.0 * ctx.n + 2.0 * alpha);
    op.at(basis.index(down), col) = std::pow(q, sigma) * num / den;
  }
  return op;
}

// Squared monomial norms recovered from the operator matrices alone:
//   g_0 = 1,   g_{m + e_i} = g_m [z*_i z_i]_{m,m} / [z_i]_{m+e_i,m}^2.
// The step ratio is independent of which slot i is lowered, so one fixed
// walk through the graded basis determines every norm.
inline std::vector<double> gram_diagonal(double alpha,
                                         const MonomialBasis& basis) {
  detail::require_weight(alpha);
  const int n = basis.n();
  std::vector<FockOperator> create;
  std::vector<FockOperator> pair;  // pair[i] = z*_i z_i
  create.reserve(static_cast<std::size_t>(n));
  pair.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    create.push_back(build_creation(i, alpha, basis));
    pair.push_back(build_annihilation(i, alpha, basis) * create.back());
  }
  std::vector<double> g(basis.size(), 0.0);
  g[0] = 1.0;
  for (std::size_t idx = 1; idx < basis.size(); ++idx) {
    std::vector<int> prev = basis.exponent(idx);
    std::size_t slot = 0;
    while (prev[slot] == 0) ++slot;
    prev[slot] -= 1;
    const std::size_t pidx = basis.index(prev);
    const double num = pair[slot].at(pidx, pidx).real();
    const double step = create[slot].at(idx, pidx).real();
    g[idx] = g[pidx] * num / (step * step);
  }
  return g;
}

// Diagonal value of z^{*m} z^m at the joint spectrum point y = (y_1 ... y_n):
//   prod_{j<n} y_{j+1}^{m_j} (p y_j / y_{j+1}; p)_{m_j} * (p y_n; p)_{m_n},
// with p the squared deformation parameter.
inline double normal_order_diagonal(const std::vector<int>& m,
                                    const std::vector<double>& y, double p) {
  if (m.empty() || m.size() != y.size()) {
    throw std::invalid_argument("multi-index and spectrum point disagree");
  }
  const std::size_t n = m.size();
  double acc = 1.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    acc *= std::pow(y[j + 1], m[j]) * qpoch(p * y[j] / y[j + 1], p, m[j]);
  }
  acc *= qpoch(p * y[n - 1], p, m[n - 1]);
  return acc;
}

// Residual of the normal ordering identity in the flat case: the matrix of
// z^{*m} z^m against the closed diagonal form above, evaluated on the joint
// spectrum y_j = q^{2(l_j + ... + l_n)} of the basis monomial z^l.
inline double normal_order_residual(const std::vector<int>& m,
                                    const MonomialBasis& basis) {
  if (static_cast<int>(m.size()) != basis.n()) {
    throw std::invalid_argument("multi-index arity mismatch");
  }
  int total = 0;
  for (int v : m) {
    if (v < 0) throw std::domain_error("negative exponent");
    total += v;
  }
  if (2 * total > basis.max_degree()) {
    throw std::domain_error("degree overflow: need 2|m| <= max_degree");
  }
  const double flat = std::numeric_limits<double>::infinity();
  const int n = basis.n();
  const double q = basis.ctx().q;
  const double p = basis.ctx().p();

  FockOperator word = FockOperator::identity(basis);
  for (int i = 1; i <= n; ++i) {
    const FockOperator c = build_creation(i, flat, basis);
    for (int t = 0; t < m[static_cast<std::size_t>(i - 1)]; ++t) word = c * word;
  }
  for (int i = n; i >= 1; --i) {
    const FockOperator a = build_annihilation(i, flat, basis);
    for (int t = 0; t < m[static_cast<std::size_t>(i - 1)]; ++t) word = a * word;
  }

  double worst = 0.0;
  std::vector<double> y(static_cast<std::size_t>(n));
  for (std::size_t col = 0; col < basis.size(); ++col) {
    if (basis.degree(col) > word.safe_degree()) continue;
    const std::vector<int>& l = basis.exponent(col);
    int suffix = 0;
    for (int j = n - 1; j >= 0; --j) {
      suffix += l[static_cast<std::size_t>(j)];
      y[static_cast<std::size_t>(j)] = std::pow(q, 2.0 * suffix);
    }
    const double expect = normal_order_diagonal(m, y, p);
    for (std::size_t row = 0; row < basis.size(); ++row) {
      const double ref = row == col ? expect : 0.0;
      worst = std::max(worst, std::abs(word.at(row, col) - ref));
    }
  }
  return worst;
}

// Max-entry residuals, on safe columns, of the defining relations at the
// given weight.  The finite-weight relations carry the deformation scale
// tau = q^{2 alpha + 2n}; tau = 0 recovers the flat relations, so one code
// path serves both.  In the flat case the report additionally covers the
// operators y_j = 1 - sum_{k >= j} z_k z*_k: diagonality, spectrum inside
// {q^{2k}}, pairwise commutation, and the shift law
//   z_i y_j = q^{-2} y_j z_i  (i >= j),      z_i y_j = y_j z_i  (i < j).
inline std::map<std::string, double> relation_residuals(
    double alpha, const MonomialBasis& basis) {
  detail::require_weight(alpha);
  if (basis.max_degree() < 3) {
    throw std::domain_error("relation residuals need max_degree >= 3");
  }
  const QContext& ctx = basis.ctx();
  const double q = ctx.q;
  const double p = ctx.p();
  const int n = ctx.n;
  const bool flat = std::isinf(alpha);
  const double tau = flat ? 0.0 : std::pow(q, 2.0 * alpha + 2.0 * n);

  std::vector<FockOperator> create;
  std::vector<FockOperator> annihilate;
  create.reserve(static_cast<std::size_t>(n));
  annihilate.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    create.push_back(build_creation(i, alpha, basis));
    annihilate.push_back(build_annihilation(i, alpha, basis));
  }
  const FockOperator id = FockOperator::identity(basis);

  // tail[j] = sum_{k >= j+1} z_k z*_k (0-based j; tail[n] = 0).
  std::vector<FockOperator> tail(static_cast<std::size_t>(n) + 1,
                                 FockOperator(basis, 0, basis.max_degree()));
  for (int j = n - 1; j >= 0; --j) {
    const std::size_t ju = static_cast<std::size_t>(j);
    tail[ju] = tail[ju + 1] + create[ju] * annihilate[ju];
  }
  const FockOperator scale = p * id + (1.0 - p) * tail[0];

  std::map<std::string, double> out;

  double swap = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      swap = std::max(swap, safe_max_abs(create[i] * create[j] -
                                         q * (create[j] * create[i])));
    }
  }
  out["create-swap"] = swap;

  double cross = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const FockOperator lhs = annihilate[i] * create[j];
      const FockOperator base = q * (create[j] * annihilate[i]);
      cross = std::max(
          safe_max_abs(lhs - base - tau * (lhs * scale - base)), cross);
    }
  }
  out["cross-commute"] = cross;

  double diag = 0.0;
  for (int j = 0; j < n; ++j) {
    const std::size_t ju = static_cast<std::size_t>(j);
    const FockOperator lhs = annihilate[ju] * create[ju];
    const FockOperator base = p * (create[ju] * annihilate[ju]);
    const FockOperator below = tail[0] - tail[ju + 1];  // sum_{k <= j}
    const FockOperator residual =
        lhs - base - (1.0 - p) * (id - tail[ju + 1]) -
        tau * (lhs * scale - base - (1.0 - p) * below);
    diag = std::max(diag, safe_max_abs(residual));
  }
  out["diag-commute"] = diag;

  // Adjointness against the Gram matrix the norms induce: the annihilation
  // matrix must equal G^{-1} C^T G entry for entry.
  const std::vector<double> g = gram_diagonal(alpha, basis);
  double adjoint = 0.0;
  for (int i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < basis.size(); ++r) {
      for (std::size_t c = 0; c < basis.size(); ++c) {
        const std::complex<double> want =
            std::conj(create[static_cast<std::size_t>(i)].at(c, r)) * g[c] /
            g[r];
        adjoint = std::max(
            adjoint,
            std::abs(annihilate[static_cast<std::size_t>(i)].at(r, c) - want));
      }
    }
  }
  out["adjoint"] = adjoint;

  if (!flat) return out;

  std::vector<FockOperator> y;
  y.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) y.push_back(id - tail[static_cast<std::size_t>(j)]);

  double offdiag = 0.0;
  double spectrum = 0.0;
  for (int j = 0; j < n; ++j) {
    const FockOperator& yj = y[static_cast<std::size_t>(j)];
    for (std::size_t col = 0; col < basis.size(); ++col) {
      if (basis.degree(col) > yj.safe_degree()) continue;
      for (std::size_t row = 0; row < basis.size(); ++row) {
        if (row != col) {
          offdiag = std::max(offdiag, std::abs(yj.at(row, col)));
        }
      }
      const std::complex<double> v = yj.at(col, col);
      double best = std::abs(v - 1.0);
      double power = 1.0;
      for (int k = 1; k <= basis.max_degree() + 2; ++k) {
        power *= p;
        best = std::min(best, std::abs(v - power));
      }
      spectrum = std::max(spectrum, best);
    }
  }
  out["y-offdiag"] = offdiag;
  out["y-spectrum"] = spectrum;

  double commute = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      commute = std::max(
          commute,
          safe_max_abs(y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] -
                       y[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(i)]));
    }
  }
  out["y-commute"] = commute;

  double shift = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const FockOperator& zi = create[static_cast<std::size_t>(i)];
      const FockOperator& yj = y[static_cast<std::size_t>(j)];
      const double factor = i >= j ? 1.0 / p : 1.0;
      shift = std::max(shift, safe_max_abs(zi * yj - factor * (yj * zi)));
    }
  }
  out["y-shift"] = shift;

  return out;
}

}  // namespace qball
