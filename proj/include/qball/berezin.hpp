// SPDX-License-Identifier: MIT
//
// The radial q-Berezin transform B_{q,t}, t = q^{2 alpha}: the explicit
// double-sum kernel on indicator functions, the spectral multiplier b(rho)
// it becomes under the spherical transform, the asymptotic expansion in t
// through polynomials of the radial Laplace operator, the small-t Laplace
// limit, and the continuous dual q-Hahn spectra and orthogonality carried
// by the transformed projection symbols.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qball/bergman.hpp"
#include "qball/context.hpp"
#include "qball/laplacian.hpp"
#include "qball/lattice.hpp"
#include "qball/orthopoly.hpp"
#include "qball/qseries.hpp"
#include "qball/spherical.hpp"

namespace qball {

namespace detail {

/// Coefficient of f_l in B_{q,t}(f_k): the finite sum over m <= min(k, l)
/// with r = l - m of
///
///   t^{k-m+r} q^{2k-2m+2rn+2r} (tq^2;q^2)_{n+m} (q^{2k-2m+2};q^2)_{n+m-1}
///   (tq^{2n+2};q^2)_m (q^{2r+2};q^2)_m / ((q^2;q^2)_{n+m-1} (q^2;q^2)_m).
///
/// Every term is positive, so plain ascending summation is accurate.
inline long double berezin_kernel(int k, int l, const WeightParam& w) {
  const QContext& ctx = w.ctx;
  const int n = ctx.n;
  const long double p = ctx.p();
  const long double t = w.t;
  long double sum = 0.0L;
  const int mtop = std::min(k, l);
  for (int m = 0; m <= mtop; ++m) {
    const int r = l - m;
    const long double term =
        std::pow(t, static_cast<long double>(k - m + r)) *
        std::pow(p, static_cast<long double>(k - m)) *
        std::pow(p, static_cast<long double>(n + 1) * r) *
        qpoch(static_cast<double>(t * p), ctx.p(), n + m) *
        qpoch(std::pow(ctx.p(), k - m + 1.0), ctx.p(), n + m - 1) *
        qpoch(static_cast<double>(t * std::pow(p, n + 1)), ctx.p(), m) *
        qpoch(std::pow(ctx.p(), r + 1.0), ctx.p(), m) /
        (qpoch(ctx.p(), ctx.p(), n + m - 1) * qpoch(ctx.p(), ctx.p(), m));
    sum += term;
  }
  return sum;
}

}  // namespace detail

/// B_{q,t} f on the first Kout lattice rows (Kout = 0 selects K).  Each
/// output row is an exact finite sum; the first truncated row serves as a
/// tail sentinel, and a visible tail raises accuracy_error.
inline RadialFunction berezin_radial(const RadialFunction& f, const WeightParam& w,
                                     int Kout = 0) {
  if (!same_domain(f.ctx, w.ctx)) {
    throw std::invalid_argument("berezin_radial: mismatched lattice contexts");
  }
  const QContext& ctx = f.ctx;
  if (Kout == 0) Kout = ctx.K;
  if (Kout < 1 || Kout > ctx.K) {
    throw std::domain_error("berezin_radial: output truncation must lie in 1..K");
  }
  int top = -1;
  for (int k = 0; k < ctx.K; ++k) {
    if (f.coeffs[k] != 0.0) top = k;
  }
  RadialFunction out(ctx);
  if (top < 0) return out;
  double scale = 0.0;
  for (int l = 0; l < Kout; ++l) {
    detail::CompensatedSum s;
    for (int k = 0; k <= top; ++k) {
      if (f.coeffs[k] == 0.0) continue;
      s.add(static_cast<long double>(f.coeffs[k]) * detail::berezin_kernel(k, l, w));
    }
    out.coeffs[l] = static_cast<double>(s.value());
    scale = std::max(scale, std::fabs(out.coeffs[l]));
  }
  long double sentinel = 0.0L;
  for (int k = 0; k <= top; ++k) {
    if (f.coeffs[k] == 0.0) continue;
    sentinel += static_cast<long double>(f.coeffs[k]) * detail::berezin_kernel(k, Kout, w);
  }
  if (std::fabs(static_cast<double>(sentinel)) > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "berezin_radial: truncated row " << Kout << " carries "
        << static_cast<double>(sentinel) << "; raise the output truncation";
    throw accuracy_error(msg.str());
  }
  return out;
}

/// Spectral multiplier of the Berezin transform:
///
///   b(rho) = (q^{2+2a}; q^2)_inf (q^{2n+2+2a}; q^2)_inf
///            / |(q^{n+2+2a+i rho}; q^2)_inf|^2,
///
/// real and strictly positive on the whole spectral interval.
inline double symbol_b(double rho, const WeightParam& w) {
  const QContext& ctx = w.ctx;
  detail::require_spectral_param(rho, ctx);
  const double p = ctx.p();
  const auto tail = ctx.tail();
  const double A = w.t * std::pow(ctx.q, ctx.n + 2);
  const double num = qpoch_inf(w.t * p, p, tail) *
                     qpoch_inf(w.t * std::pow(p, ctx.n + 1), p, tail);
  return num / qpoch_inf_abs2(A, 0.5 * ctx.h * rho, p, tail);
}

/// Uniform lower bound for b: the denominator product is largest when every
/// factor takes its extreme value (-q^{n+2+2a}; q^2)_inf.
inline double symbol_b_lower_bound(const WeightParam& w) {
  const QContext& ctx = w.ctx;
  const double p = ctx.p();
  const auto tail = ctx.tail();
  const double A = w.t * std::pow(ctx.q, ctx.n + 2);
  const double num = qpoch_inf(w.t * p, p, tail) *
                     qpoch_inf(w.t * std::pow(p, ctx.n + 1), p, tail);
  const double floor = qpoch_inf(-A, p, tail);
  return num / (floor * floor);
}

/// Truncated generating-function route to b:
/// (q^{2a+2}; q^2)_n sum_{j<=J} q^{j(2a+n+2)} / (q^2; q^2)_j * Q_j.
inline double symbol_b_series(double rho, const WeightParam& w, int terms) {
  const QContext& ctx = w.ctx;
  detail::require_spectral_param(rho, ctx);
  if (terms < 0) throw std::domain_error("symbol_b_series: negative truncation");
  const long double p = ctx.p();
  const double x = std::cos(0.5 * ctx.h * rho);
  const auto row = detail::asc_row(x, terms, ctx);
  const long double ratio = static_cast<long double>(w.t) *
                            std::pow(static_cast<long double>(ctx.q), ctx.n + 2);
  detail::CompensatedSum s;
  long double power = 1.0L;   // q^{j(2a+n+2)}
  long double poch = 1.0L;    // (q^2; q^2)_j
  for (int j = 0; j <= terms; ++j) {
    s.add(power / poch * row[j]);
    poch *= 1.0L - std::pow(p, static_cast<long double>(j + 1));
    power *= ratio;
  }
  return static_cast<double>(qpoch(static_cast<double>(w.t * p), ctx.p(), ctx.n) *
                             s.value());
}

/// Expansion polynomial p_j evaluated at a scalar: p_j(lambda(rho)) equals
/// phi_rho(q^{2j}), so the values are tied to the Jacobi matrix row by row,
///
///   c_{l+1} p_{l+1} = (lambda - b_l) p_l - a_{l-1} p_{l-1},   p_0 = 1,
///
/// and the divisors c_{l+1} stay bounded away from zero.  The monomial
/// coefficients of the same polynomial are modest, but every product route
/// to them passes through intermediates of size p^{-j(j-1)/2} and cancels
/// catastrophically, so the recurrence is the only evaluation used.
inline double expansion_scalar(int j, double lambda, const QContext& ctx) {
  if (j < 0) throw std::domain_error("expansion_scalar: negative index");
  QContext ext = ctx;
  ext.K = std::max(ctx.K, j + 2);
  const auto op = laplace_jacobi(ext);
  long double prev = 0.0L;
  long double cur = 1.0L;
  for (int l = 0; l < j; ++l) {
    const std::size_t u = static_cast<std::size_t>(l);
    long double next = (static_cast<long double>(lambda) - op.b[u]) * cur;
    if (l > 0) next -= op.a[u - 1] * prev;
    next /= op.c[u + 1];
    prev = cur;
    cur = next;
  }
  return static_cast<double>(cur);
}

/// p_j applied to the radial Laplace operator: the same three-term
/// recurrence with apply(op, .) substituted for lambda, run on a lattice
/// internally extended by j rows so that every returned row is exact for
/// finitely supported input.
inline RadialFunction expansion_apply(int j, const RadialFunction& f) {
  if (j < 0) throw std::domain_error("expansion_apply: negative index");
  if (j > f.ctx.K) {
    throw std::domain_error("expansion_apply: polynomial degree exceeds the lattice margin");
  }
  QContext ext = f.ctx;
  ext.K = f.ctx.K + j;
  const auto op = laplace_jacobi(ext);
  RadialFunction prev(ext);
  RadialFunction cur(ext);
  for (int k = 0; k < f.ctx.K; ++k) cur.coeffs[k] = f.coeffs[k];
  for (int l = 0; l < j; ++l) {
    const std::size_t u = static_cast<std::size_t>(l);
    RadialFunction next = apply(op, cur);
    for (int k = 0; k < ext.K; ++k) {
      next.coeffs[k] -= op.b[u] * cur.coeffs[k];
      if (l > 0) next.coeffs[k] -= op.a[u - 1] * prev.coeffs[k];
      next.coeffs[k] /= op.c[u + 1];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  RadialFunction out(f.ctx);
  for (int k = 0; k < f.ctx.K; ++k) out.coeffs[k] = cur.coeffs[k];
  return out;
}

/// Partial sum of the small-t expansion of the Berezin transform:
///
///   B_{q,t} f ~ (q^2 t; q^2)_n sum_{j<=J} t^j q^{2j}
///               ((q^{2j+2}; q^2)_{n-1} / (q^2; q^2)_{n-1}) p_j(Delta) f.
inline RadialFunction berezin_expansion(const RadialFunction& f, const WeightParam& w,
                                        int terms) {
  if (!same_domain(f.ctx, w.ctx)) {
    throw std::invalid_argument("berezin_expansion: mismatched lattice contexts");
  }
  if (terms < 0) throw std::domain_error("berezin_expansion: negative truncation");
  const QContext& ctx = f.ctx;
  const long double p = ctx.p();
  const long double den = qpoch(ctx.p(), ctx.p(), ctx.n - 1);
  RadialFunction out(ctx);
  long double tq2j = 1.0L;  // (t q^2)^j
  for (int j = 0; j <= terms; ++j) {
    const long double coeff =
        tq2j * qpoch(std::pow(ctx.p(), j + 1.0), ctx.p(), ctx.n - 1) / den;
    const RadialFunction term = expansion_apply(j, f);
    for (int k = 0; k < ctx.K; ++k) {
      out.coeffs[k] += static_cast<double>(coeff) * term.coeffs[k];
    }
    tq2j *= static_cast<long double>(w.t) * p;
  }
  const double head = qpoch(static_cast<double>(w.t * p), ctx.p(), ctx.n);
  for (int k = 0; k < ctx.K; ++k) out.coeffs[k] *= head;
  return out;
}

/// Difference quotient of the Berezin family at its smallest scale, plus the
/// fitted log-log slope of the first-order remainder.
struct LaplaceLimit {
  RadialFunction value;  // (q^{-2n}/(1-q^2)) (B_{q,t} f - f) / t at the smallest t
  double slope;          // least-squares slope of log ||remainder|| vs log t
};

/// Recovers the radial Laplace operator from the Berezin family: the scaled
/// difference quotient at the smallest supplied t approximates Delta f with
/// error O(t), and the remainder after subtracting t (1-q^2) q^{2n} Delta f
/// must shrink monotonically along the supplied (descending) t list.
inline LaplaceLimit laplacian_from_limit(const RadialFunction& f,
                                         const std::vector<double>& t_values) {
  const QContext& ctx = f.ctx;
  if (t_values.empty()) {
    throw std::domain_error("laplacian_from_limit: empty scale list");
  }
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (!(t_values[i] > 0.0) || t_values[i] > 0.1) {
      throw std::domain_error("laplacian_from_limit: scales must lie in (0, 0.1]");
    }
    if (i > 0 && t_values[i] >= t_values[i - 1]) {
      throw std::domain_error("laplacian_from_limit: scales must descend");
    }
  }
  LaplaceLimit out{RadialFunction(ctx), 0.0};
  double fmax = 0.0;
  for (double v : f.coeffs) fmax = std::max(fmax, std::fabs(v));
  if (fmax == 0.0) return out;

  const RadialFunction df = apply(laplace_jacobi(ctx), f);
  const double p = ctx.p();
  const double first = (1.0 - p) * std::pow(p, ctx.n);  // (1-q^2) q^{2n}
  std::vector<double> norms, log_t, log_r;
  RadialFunction last(ctx);
  for (double t : t_values) {
    const WeightParam w = WeightParam::from_t(ctx, t);
    last = berezin_radial(f, w, ctx.K);
    double norm = 0.0;
    for (int k = 0; k < ctx.K; ++k) {
      norm = std::max(norm, std::fabs(last.coeffs[k] - f.coeffs[k] -
                                      t * first * df.coeffs[k]));
    }
    if (!norms.empty() && norm >= norms.back()) {
      std::ostringstream msg;
      msg << "laplacian_from_limit: remainder " << norm << " at t = " << t
          << " does not decrease";
      throw accuracy_error(msg.str());
    }
    norms.push_back(norm);
    log_t.push_back(std::log(t));
    log_r.push_back(std::log(norm));
  }
  const double t_min = t_values.back();
  for (int k = 0; k < ctx.K; ++k) {
    out.value.coeffs[k] = (last.coeffs[k] - f.coeffs[k]) / (t_min * first);
  }
  if (log_t.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
      mx += log_t[i];
      my += log_r[i];
    }
    mx /= log_t.size();
    my /= log_t.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
      sxy += (log_t[i] - mx) * (log_r[i] - my);
      sxx += (log_t[i] - mx) * (log_t[i] - mx);
    }
    out.slope = sxy / sxx;
  }
  return out;
}

/// Closed form of the transformed projection symbol:
///
///   (F sigma(P_m))(rho) = q^{-mn} (q^2;q^2)_n (q^{2n+2+2a};q^2)_inf
///     (q^{2n+2m+2+2a};q^2)_inf / (|(q^{n+2+2a+i rho};q^2)_inf|^2 (q^2;q^2)_m)
///     * p_m(cos(h rho/2); q^{n+2+2a}, q^n, q^n | q^2),
///
/// a continuous dual q-Hahn polynomial against a rho-independent scale.
inline double qhahn_spectrum(int m, double rho, const WeightParam& w) {
  if (m < 0) throw std::domain_error("qhahn_spectrum: negative degree");
  const QContext& ctx = w.ctx;
  detail::require_spectral_param(rho, ctx);
  const double p = ctx.p();
  const auto tail = ctx.tail();
  const double qn = std::pow(ctx.q, ctx.n);
  const double A = w.t * std::pow(ctx.q, ctx.n + 2);
  const long double pref =
      std::pow(static_cast<long double>(ctx.q), -static_cast<long double>(m) * ctx.n) *
      qpoch(p, p, ctx.n) * qpoch_inf(w.t * std::pow(p, ctx.n + 1), p, tail) *
      qpoch_inf(w.t * std::pow(p, ctx.n + m + 1), p, tail) /
      (qpoch_inf_abs2(A, 0.5 * ctx.h * rho, p, tail) * qpoch(p, p, m));
  const double x = std::cos(0.5 * ctx.h * rho);
  return static_cast<double>(pref * cont_dual_qhahn(m, x, A, qn, qn, p));
}

/// Orthogonality density for those polynomials:
///
///   W(rho) = |(q^{2 i rho};q^2)_inf|^2 /
///            (|(q^{n+2+2a+i rho};q^2)_inf|^2 |(q^{n+i rho};q^2)_inf|^4),
///
/// vanishing exactly at both endpoints.
inline double qhahn_weight(double rho, const WeightParam& w) {
  const QContext& ctx = w.ctx;
  detail::require_spectral_param(rho, ctx);
  const double p = ctx.p();
  const auto tail = ctx.tail();
  const double A = w.t * std::pow(ctx.q, ctx.n + 2);
  const double num = qpoch_inf_abs2(1.0, ctx.h * rho, p, tail);
  const double den1 = qpoch_inf_abs2(A, 0.5 * ctx.h * rho, p, tail);
  const double den2 = qpoch_inf_abs2(std::pow(ctx.q, ctx.n), 0.5 * ctx.h * rho, p, tail);
  return num / (den1 * den2 * den2);
}

/// Gram matrix of p_m(cos(h rho/2); q^{n+2+2a}, q^n, q^n | q^2) against W:
/// G[m][l] = (1/4pi) integral p_m p_l W.  The diagonal equals
/// 1/(h (q^{2n+2m+2+2a};q^2)_inf^2 (q^{2m+2};q^2)_inf (q^{2n+2m};q^2)_inf).
inline std::vector<std::vector<double>> qhahn_gram(int mmax, const WeightParam& w) {
  if (mmax < 0 || mmax > 10) {
    throw std::domain_error("qhahn_gram: degree bound must lie in 0..10");
  }
  const QContext& ctx = w.ctx;
  const double pi = std::acos(-1.0);
  const double p = ctx.p();
  const double qn = std::pow(ctx.q, ctx.n);
  const double A = w.t * std::pow(ctx.q, ctx.n + 2);
  const double top = ctx.rho_max();
  const std::size_t size = static_cast<std::size_t>(mmax) + 1;
  std::vector<std::vector<long double>> rows(static_cast<std::size_t>(ctx.M) + 1);
  std::vector<double> density(static_cast<std::size_t>(ctx.M) + 1);
  for (int j = 0; j <= ctx.M; ++j) {
    const double rho = top * j / ctx.M;
    const double x = std::cos(pi * j / ctx.M);
    auto& row = rows[j];
    row.resize(size);
    for (int m = 0; m <= mmax; ++m) {
      row[m] = cont_dual_qhahn(m, x, A, qn, qn, p);
    }
    density[j] = qhahn_weight(rho, w);
  }
  const double step = top / ctx.M;
  std::vector<std::vector<double>> gram(size, std::vector<double>(size, 0.0));
  std::vector<long double> integrand(static_cast<std::size_t>(ctx.M) + 1);
  for (int m = 0; m <= mmax; ++m) {
    for (int l = m; l <= mmax; ++l) {
      for (int j = 0; j <= ctx.M; ++j) {
        integrand[j] = rows[j][m] * rows[j][l] * density[j];
      }
      const double value = detail::trapezoid(integrand, step) / (4.0 * pi);
      gram[m][l] = value;
      gram[l][m] = value;
    }
  }
  return gram;
}

}  // namespace qball
