// SPDX-License-Identifier: MIT
//
// Weighted Bergman structure: monomial norms, Toeplitz operators with radial
// symbols, the normalized q-trace, and covariant symbols.
//
// Every radial Toeplitz operator acts as a scalar on each homogeneous degree,
// so the whole calculus reduces to vectors indexed by total degree.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qball/context.hpp"
#include "qball/lattice.hpp"
#include "qball/qseries.hpp"

namespace qball {

// Weight exponent alpha together with the derived scale t = q^{2 alpha}.
struct WeightParam {
  QContext ctx;
  double alpha;
  double t;

  WeightParam(const QContext& c, double a) : WeightParam(c, a, Raw{}) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::domain_error("weight exponent must be positive and finite");
    }
  }

  // Classical-limit fixtures sit at alpha = 0 (t = 1); the formulas below
  // stay finite there, but the boundary is opt-in by name.
  static WeightParam boundary(const QContext& c, double a) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw std::domain_error("boundary weight exponent must be nonnegative");
    }
    return WeightParam(c, a, Raw{});
  }

  static WeightParam from_t(const QContext& c, double t0) {
    if (!(t0 > 0.0) || !(t0 < 1.0)) {
      throw std::domain_error("weight scale t must lie in (0,1)");
    }
    return WeightParam(c, std::log(t0) / (2.0 * std::log(c.q)), Raw{});
  }

 private:
  struct Raw {};
  WeightParam(const QContext& c, double a, Raw)
      : ctx(c), alpha(a), t(std::pow(c.q, 2.0 * a)) {}
};

// Operator acting as values[d] times the identity on the degree-d component.
struct DegreeDiagonalOperator {
  QContext ctx;
  WeightParam weight;
  std::vector<double> values;

  // cutoff 0 picks the default degree cutoff, clipped to ctx.K.
  explicit DegreeDiagonalOperator(const WeightParam& w, int cutoff = 0)
      : ctx(w.ctx),
        weight(w),
        values(static_cast<std::size_t>(resolve_cutoff(w.ctx, cutoff)), 0.0) {}

  static constexpr int kDefaultCutoff = 48;

  int cutoff() const { return static_cast<int>(values.size()); }

 private:
  static int resolve_cutoff(const QContext& c, int cutoff) {
    if (cutoff == 0) return std::min(kDefaultCutoff, c.K);
    if (cutoff < 1 || cutoff > c.K) {
      throw std::domain_error("degree cutoff must lie in [1, K]");
    }
    return cutoff;
  }
};

namespace detail {

inline void require_same_shape(const DegreeDiagonalOperator& a,
                               const DegreeDiagonalOperator& b) {
  if (a.ctx.q != b.ctx.q || a.ctx.n != b.ctx.n ||
      a.weight.alpha != b.weight.alpha ||
      a.values.size() != b.values.size()) {
    throw std::domain_error("degree-diagonal operators are incompatible");
  }
}

}  // namespace detail

inline DegreeDiagonalOperator operator*(const DegreeDiagonalOperator& a,
                                        const DegreeDiagonalOperator& b) {
  detail::require_same_shape(a, b);
  DegreeDiagonalOperator out = a;
  for (std::size_t d = 0; d < out.values.size(); ++d) out.values[d] *= b.values[d];
  return out;
}

inline DegreeDiagonalOperator operator+(const DegreeDiagonalOperator& a,
                                        const DegreeDiagonalOperator& b) {
  detail::require_same_shape(a, b);
  DegreeDiagonalOperator out = a;
  for (std::size_t d = 0; d < out.values.size(); ++d) out.values[d] += b.values[d];
  return out;
}

inline DegreeDiagonalOperator operator*(double s,
                                        const DegreeDiagonalOperator& a) {
  DegreeDiagonalOperator out = a;
  for (double& v : out.values) v *= s;
  return out;
}

// Projection onto the degree-m homogeneous component.
inline DegreeDiagonalOperator degree_projection(int m, const WeightParam& w,
                                                int cutoff = 0) {
  DegreeDiagonalOperator out(w, cutoff);
  if (m < 0 || m >= out.cutoff()) {
    throw std::domain_error("projection degree outside the cutoff");
  }
  out.values[static_cast<std::size_t>(m)] = 1.0;
  return out;
}

// Squared norm of the monomial z^m in the weighted space:
//   G(n+a+1) prod_i G(m_i + 1) / G(|m| + n + a + 1)
// with G the q^2-Gamma function.
inline double monomial_norm(const std::vector<int>& m, const WeightParam& w) {
  if (static_cast<int>(m.size()) != w.ctx.n) {
    throw std::invalid_argument("multi-index arity mismatch");
  }
  const double p = w.ctx.p();
  int total = 0;
  long double num = 1.0L;
  for (int mi : m) {
    if (mi < 0) throw std::domain_error("negative exponent");
    total += mi;
    num *= qgamma(mi + 1.0, p);
  }
  num *= qgamma(w.ctx.n + w.alpha + 1.0, p);
  return static_cast<double>(num / qgamma(total + w.ctx.n + w.alpha + 1.0, p));
}

// Scalar by which the Toeplitz operator of the k-th radial indicator acts on
// the degree-m component:
//   q^{2(k-m)(a+1)} (q^{2a+2}; q^2)_{n+m} (q^{2(k-m)+2}; q^2)_{n+m-1}
//                                       / (q^2; q^2)_{n+m-1},
// and zero for m > k.
inline double toeplitz_coefficient(int k, int m, const WeightParam& w) {
  if (k < 0 || m < 0) throw std::domain_error("lattice index out of range");
  if (m > k) return 0.0;
  const QContext& ctx = w.ctx;
  const double p = ctx.p();
  const long double head = powl(static_cast<long double>(w.t) * p, k - m);
  const long double body = qpoch(w.t * p, p, ctx.n + m) *
                           qpoch(std::pow(p, k - m + 1), p, ctx.n + m - 1) /
                           qpoch(p, p, ctx.n + m - 1);
  return static_cast<double>(head * body);
}

inline DegreeDiagonalOperator toeplitz_radial(int k, const WeightParam& w,
                                              int cutoff = 0) {
  DegreeDiagonalOperator out(w, cutoff);
  for (int d = 0; d < out.cutoff() && d <= k; ++d) {
    out.values[static_cast<std::size_t>(d)] = toeplitz_coefficient(k, d, w);
  }
  return out;
}

// Toeplitz operator of a general radial symbol, by linearity in the symbol.
inline DegreeDiagonalOperator toeplitz_radial(const RadialFunction& f,
                                              const WeightParam& w,
                                              int cutoff = 0) {
  if (f.ctx.q != w.ctx.q || f.ctx.n != w.ctx.n) {
    throw std::domain_error("symbol and weight live on different domains");
  }
  DegreeDiagonalOperator out(w, cutoff);
  for (int d = 0; d < out.cutoff(); ++d) {
    detail::CompensatedSum acc;
    for (int k = d; k < f.ctx.K; ++k) {
      if (f[k] == 0.0) continue;
      acc.add(static_cast<long double>(f[k]) * toeplitz_coefficient(k, d, w));
    }
    out.values[static_cast<std::size_t>(d)] = static_cast<double>(acc.value());
  }
  return out;
}

// Mass of the whole degree-d component inside the q-trace:
//   q^{-2nd} (q^{2d+2}; q^2)_{n-1} / (q^2; q^2)_{n-1}.
inline double trace_degree_weight(const QContext& ctx, int d) {
  if (d < 0) throw std::domain_error("degree out of range");
  const double p = ctx.p();
  return static_cast<double>(powl(p, -static_cast<long double>(ctx.n) * d) *
                             qpoch(std::pow(p, d + 1), p, ctx.n - 1) /
                             qpoch(p, p, ctx.n - 1));
}

// Normalized q-trace of a degree-diagonal operator.  The values must decay
// fast enough that the cutoff tail is invisible; a non-negligible final term
// signals divergence.
inline double trq(const DegreeDiagonalOperator& op) {
  const QContext& ctx = op.ctx;
  const double p = ctx.p();
  const double pref = qpoch(p, p, ctx.n) / qpoch(op.weight.t * p, p, ctx.n);
  detail::CompensatedSum acc;
  long double scale = 0.0L;
  long double last = 0.0L;
  for (int d = 0; d < op.cutoff(); ++d) {
    last = static_cast<long double>(op.values[static_cast<std::size_t>(d)]) *
           trace_degree_weight(ctx, d);
    scale = std::max(scale, std::abs(last));
    acc.add(last);
  }
  if (std::abs(last) > 1e-8L * std::max(1.0L, scale)) {
    throw accuracy_error("q-trace cutoff leaves a visible tail");
  }
  return pref * static_cast<double>(acc.value());
}

// Covariant symbol: sigma(op)(q^{2l}) = Tr_q(op T_{f_l}) / integral of f_l.
// The denominators are the lattice weights, so the inversion is an explicit
// diagonal quotient.
inline RadialFunction covariant_symbol(const DegreeDiagonalOperator& op) {
  const QContext& ctx = op.ctx;
  const double p = ctx.p();
  const double pref = qpoch(p, p, ctx.n) / qpoch(op.weight.t * p, p, ctx.n);
  RadialFunction out(ctx);
  for (int l = 0; l < ctx.K; ++l) {
    detail::CompensatedSum acc;
    for (int d = 0; d < op.cutoff() && d <= l; ++d) {
      const double v = op.values[static_cast<std::size_t>(d)];
      if (v == 0.0) continue;
      acc.add(static_cast<long double>(v) * toeplitz_coefficient(l, d, op.weight) *
              trace_degree_weight(ctx, d));
    }
    out[l] = pref * static_cast<double>(acc.value()) / lattice_weight(ctx, l);
  }
  return out;
}

// Closed form of the covariant symbol of the degree-m projection:
//   q^{-2m(a+n+1)} ((q^{2a+2n+2}; q^2)_m / (q^2; q^2)_m)
//       y^{a+n+1} (y q^{-2m+2}; q^2)_m,
// evaluated on the lattice y = q^{2l}.
inline RadialFunction covariant_symbol_projection(int m, const WeightParam& w) {
  if (m < 0) throw std::domain_error("projection degree out of range");
  const QContext& ctx = w.ctx;
  const double p = ctx.p();
  const long double base = static_cast<long double>(w.t) * powl(p, ctx.n + 1);
  const long double head = powl(base, -static_cast<long double>(m)) *
                           qpoch(static_cast<double>(base), p, m) /
                           qpoch(p, p, m);
  RadialFunction out(ctx);
  for (int l = 0; l < ctx.K; ++l) {
    const double y = std::pow(p, l);
    out[l] = static_cast<double>(head *
                                 powl(y, w.alpha + ctx.n + 1) *
                                 qpoch(y * std::pow(p, 1 - m), p, m));
  }
  return out;
}

}  // namespace qball
