// SPDX-License-Identifier: MIT
//
// Radial and multi-radial functions on the geometric lattice y = q^{2k},
// the Jackson integral, the invariant integral and its weighted variant,
// and the L2 inner product of the radial function space.
//
// A RadialFunction is a finite combination sum_k coeffs[k] f_k where f_k is
// the indicator of the lattice point y = q^{2k}; every integral is therefore
// a finite sum and truncation enters only through the fixed length K.

#ifndef QBALL_LATTICE_HPP_
#define QBALL_LATTICE_HPP_

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qball/qseries.hpp"

namespace qball {

struct RadialFunction {
  QContext ctx;
  std::vector<double> coeffs;  // entry k = value at y = q^{2k}, k < K

  explicit RadialFunction(const QContext& c) : ctx(c), coeffs(c.K, 0.0) {}

  /// The basis indicator f_k.
  static RadialFunction basis(const QContext& c, int k) {
    if (k < 0 || k >= c.K) throw std::domain_error("RadialFunction: basis index out of range");
    RadialFunction f(c);
    f.coeffs[k] = 1.0;
    return f;
  }

  double operator[](int k) const { return coeffs.at(k); }
  double& operator[](int k) { return coeffs.at(k); }
};

inline bool same_domain(const QContext& a, const QContext& b) {
  return a.q == b.q && a.n == b.n && a.K == b.K;
}

/// Lattice weight w_k = (1-q^{2n}) q^{-2nk} (q^{2k+2}; q^2)_{n-1}: the mass
/// the invariant integral assigns to the point y = q^{2k}.
inline double lattice_weight(const QContext& ctx, int k) {
  if (k < 0) throw std::domain_error("lattice_weight: negative index");
  const long double p = ctx.p();
  const long double head = 1.0L - std::pow(p, static_cast<long double>(ctx.n));
  const long double growth = std::pow(p, -static_cast<long double>(ctx.n) * k);
  const long double tailpoch = qpoch(std::pow(ctx.q, 2.0 * k + 2.0), ctx.p(), ctx.n - 1);
  return static_cast<double>(head * growth * tailpoch);
}

/// Jackson integral on [0,1]: (1-base2) * sum_l samples[l] * base2^l, the
/// samples being values at t = base2^l.  The truncation tail is the caller's
/// responsibility (samples of a finite function vanish beyond its support).
inline double jackson_integral(const std::vector<double>& samples, double base2) {
  detail::require_base(base2);
  detail::CompensatedSum acc;
  long double w = 1.0L;
  for (double s : samples) {
    if (!std::isfinite(s)) throw std::domain_error("jackson_integral: non-finite sample");
    acc.add(static_cast<long double>(s) * w);
    w *= base2;
  }
  return static_cast<double>((1.0L - static_cast<long double>(base2)) * acc.value());
}

/// Invariant integral of a radial function: sum_k f(q^{2k}) w_k.
inline double invariant_integral_radial(const RadialFunction& f) {
  detail::CompensatedSum acc;
  for (int k = 0; k < static_cast<int>(f.coeffs.size()); ++k) {
    const double c = f.coeffs[k];
    if (c == 0.0) continue;
    if (!std::isfinite(c)) throw std::domain_error("invariant_integral_radial: non-finite value");
    acc.add(static_cast<long double>(c) * static_cast<long double>(lattice_weight(f.ctx, k)));
  }
  return static_cast<double>(acc.value());
}

/// L2 pairing (f, g) = sum_k f(q^{2k}) conj(g(q^{2k})) w_k.
inline std::complex<double> l2_inner_radial(const RadialFunction& f, const RadialFunction& g) {
  if (!same_domain(f.ctx, g.ctx)) throw std::domain_error("l2_inner_radial: context mismatch");
  detail::CompensatedSum acc;
  for (int k = 0; k < static_cast<int>(f.coeffs.size()); ++k) {
    const double prod = f.coeffs[k] * g.coeffs[k];
    if (prod == 0.0) continue;
    acc.add(static_cast<long double>(prod) * static_cast<long double>(lattice_weight(f.ctx, k)));
  }
  return {static_cast<double>(acc.value()), 0.0};
}

/// Visits every multi-index k with k1 >= k2 >= ... >= kn >= 0 and
/// k1 < k1_limit, in lexicographically descending order (the fixed
/// summation order of all simplex sums in this library).
template <typename Visit>
void for_each_simplex_point(int n, int k1_limit, Visit&& visit) {
  if (n < 1) throw std::domain_error("for_each_simplex_point: n must be positive");
  std::vector<int> k(static_cast<std::size_t>(n), 0);
  // Odometer descent: position 0 is k1.
  const auto descend = [&](auto&& self, int pos, int upper) -> void {
    if (pos == n) {
      visit(static_cast<const std::vector<int>&>(k));
      return;
    }
    for (int v = upper; v >= 0; --v) {
      k[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, v);
    }
  };
  descend(descend, 0, k1_limit - 1);
}

/// Function on the truncated q-simplex {k in P(n) : k1 < K}; stores only
/// nonzero entries.  Keys are validated against the ordering constraint at
/// insertion time.
class MultiRadialFunction {
 public:
  explicit MultiRadialFunction(const QContext& ctx) : ctx_(ctx) {}

  const QContext& ctx() const { return ctx_; }
  const std::map<std::vector<int>, double>& entries() const { return entries_; }

  void set(const std::vector<int>& k, double value) {
    validate_key(k);
    if (!std::isfinite(value)) throw std::domain_error("MultiRadialFunction: non-finite value");
    if (value == 0.0) {
      entries_.erase(k);
    } else {
      entries_[k] = value;
    }
  }

  double value(const std::vector<int>& k) const {
    const auto it = entries_.find(k);
    return it == entries_.end() ? 0.0 : it->second;
  }

  /// Radial embedding: g as a function of y1 alone, sampled over the whole
  /// truncated simplex.
  static MultiRadialFunction embed(const RadialFunction& g) {
    MultiRadialFunction out(g.ctx);
    for_each_simplex_point(g.ctx.n, g.ctx.K, [&](const std::vector<int>& k) {
      const double v = g.coeffs[static_cast<std::size_t>(k.front())];
      if (v != 0.0) out.entries_[k] = v;
    });
    return out;
  }

 private:
  void validate_key(const std::vector<int>& k) const {
    if (static_cast<int>(k.size()) != ctx_.n) {
      throw std::domain_error("MultiRadialFunction: key arity mismatch");
    }
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] < 0 || (i > 0 && k[i] > k[i - 1])) {
        throw std::domain_error("MultiRadialFunction: key violates simplex ordering");
      }
    }
    if (k.front() >= ctx_.K) throw std::domain_error("MultiRadialFunction: key beyond truncation");
  }

  QContext ctx_;
  std::map<std::vector<int>, double> entries_;
};

namespace detail {

// Shared kernel of the two simplex integrals: prefactor * sum over entries of
// value * q^{2 k1 e1} * q^{2(k2 + ... + kn)}, summed in descending key order.
inline double simplex_sum(const MultiRadialFunction& f, double e1, double prefactor) {
  const long double p = f.ctx().p();
  CompensatedSum acc;
  const auto& entries = f.entries();
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    const auto& k = it->first;
    long double w = std::pow(p, static_cast<long double>(e1) * k.front());
    long double rest = 0.0L;
    for (std::size_t i = 1; i < k.size(); ++i) rest += k[i];
    w *= std::pow(p, rest);
    acc.add(static_cast<long double>(it->second) * w);
  }
  return static_cast<double>(prefactor * acc.value());
}

}  // namespace detail

/// Invariant integral in simplex coordinates:
/// (q^2; q^2)_n sum_k f(k) q^{-2 n k1} q^{2 k2} ... q^{2 kn}.
inline double invariant_integral_multi(const MultiRadialFunction& f) {
  const auto& ctx = f.ctx();
  return detail::simplex_sum(f, -ctx.n, qpoch(ctx.p(), ctx.p(), ctx.n));
}

/// Weighted integral with parameter alpha > 0 (alpha = 0 is permitted as a
/// boundary fixture; the prefactor and weights stay finite there):
/// (q^{2 alpha + 2}; q^2)_n sum_k f(k) q^{2 k1 (alpha+1)} q^{2 k2} ... q^{2 kn}.
inline double weighted_integral(const MultiRadialFunction& f, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("weighted_integral: alpha must be nonnegative");
  }
  const auto& ctx = f.ctx();
  const double prefactor = qpoch(std::pow(ctx.p(), alpha + 1.0), ctx.p(), ctx.n);
  return detail::simplex_sum(f, alpha + 1.0, prefactor);
}

}  // namespace qball

#endif  // QBALL_LATTICE_HPP_
