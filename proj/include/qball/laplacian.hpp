// SPDX-License-Identifier: MIT
//
// Radial q-Laplace operator on the lattice: Jacobi-matrix and second-order
// difference forms, its eigenvalue curve lambda(rho), and the spherical
// functions phi_rho.
//
// The Jacobi matrix is the primary representation; the difference form and
// the terminating series for phi exist as independent verification paths.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qball/context.hpp"
#include "qball/lattice.hpp"
#include "qball/orthopoly.hpp"
#include "qball/qseries.hpp"

namespace qball {

namespace detail {

inline void require_spectral_param(double rho, const QContext& ctx) {
  const double top = ctx.rho_max();
  const double slack = 1e-12 * (1.0 + top);
  if (!(rho >= -slack) || !(rho <= top + slack)) {
    throw std::domain_error("spectral parameter must lie in [0, 2*pi/h]");
  }
}

}  // namespace detail

// Action on the indicator basis:
//   L f_k = a_k f_{k+1} + b_k f_k + c_k f_{k-1},   f_{-1} == 0,
// so the coefficient vector map reads
//   (L v)_l = a_{l-1} v_{l-1} + b_l v_l + c_{l+1} v_{l+1}.
struct TridiagonalOperator {
  QContext ctx;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;  // c[0] is never used
};

inline TridiagonalOperator laplace_jacobi(const QContext& ctx) {
  TridiagonalOperator op{ctx, {}, {}, {}};
  const std::size_t K = static_cast<std::size_t>(ctx.K);
  op.a.resize(K);
  op.b.resize(K);
  op.c.resize(K);
  const double p = ctx.p();
  const double C = p / ((1.0 - p) * (1.0 - p));
  const double qm2n = std::pow(ctx.q, -2.0 * ctx.n);
  for (std::size_t k = 0; k < K; ++k) {
    const double pk = std::pow(p, static_cast<double>(k));
    op.a[k] = C * (1.0 - p * pk);
    op.b[k] = -C * (1.0 + qm2n - 2.0 * pk);
    op.c[k] = C * (qm2n - pk / p);
  }
  return op;
}

// Applies the operator to a coefficient vector.  The last row reaches for
// the missing coefficient beyond the cutoff and is therefore the one row
// whose value reflects zero extension rather than the full operator.
inline RadialFunction apply(const TridiagonalOperator& op,
                            const RadialFunction& f) {
  if (op.ctx.q != f.ctx.q || op.ctx.n != f.ctx.n ||
      op.a.size() != f.coeffs.size()) {
    throw std::domain_error("operator and function live on different lattices");
  }
  const int K = static_cast<int>(op.a.size());
  RadialFunction out(f.ctx);
  for (int l = 0; l < K; ++l) {
    double acc = op.b[static_cast<std::size_t>(l)] * f[l];
    if (l > 0) acc += op.a[static_cast<std::size_t>(l - 1)] * f[l - 1];
    if (l + 1 < K) acc += op.c[static_cast<std::size_t>(l + 1)] * f[l + 1];
    out[l] = acc;
  }
  return out;
}

// Index of the last row unaffected by the cutoff.
inline int last_exact_row(const QContext& ctx) { return ctx.K - 2; }

// Second-order difference route: an inner divided difference on the half
// grid y = q^{2l+1} followed by an outer one back on the lattice.  Values
// match the Jacobi form; the K-1 row carries the same zero extension.
inline RadialFunction apply_difference_form(const RadialFunction& f) {
  const QContext& ctx = f.ctx;
  const double q = ctx.q;
  const double p = ctx.p();
  const int K = ctx.K;

  // g(q^{2l+1}) = q^{(2l+1)(1-n)} (q^{2l+2}; q^2)_n (f_l - f_{l+1})
  //                 / (q^{2l} - q^{2l+2});  l = -1 gives exactly 0.
  const auto half_grid = [&](int l) -> double {
    if (l < 0) return 0.0;
    const double fl = f[l];
    const double fnext = l + 1 < K ? f[l + 1] : 0.0;
    const double y = std::pow(p, l);
    return std::pow(q, (2.0 * l + 1.0) * (1.0 - ctx.n)) *
           qpoch(p * y, p, ctx.n) * (fl - fnext) / (y - p * y);
  };

  RadialFunction out(ctx);
  for (int k = 0; k < K; ++k) {
    const double y = std::pow(p, k);
    const double pref =
        std::pow(q, -static_cast<double>(ctx.n)) * std::pow(y, ctx.n + 1) /
        qpoch(y * p, p, ctx.n - 1);
    const double upper = half_grid(k - 1);
    const double lower = half_grid(k);
    out[k] = pref * (upper - lower) / (y / q - y * q);
  }
  return out;
}

// Point on the spectral interval with its eigenvalue.
struct SpectralPoint {
  double rho;
  double x;  // cos(h rho / 2)
  double lambda;
};

// lambda(rho) = -q^{2-2n} (1 - 2 q^n cos(h rho/2) + q^{2n}) / (1-q^2)^2,
// kept as a real quadratic so no imaginary dust can appear.
inline double lambda_eig(double rho, const QContext& ctx) {
  detail::require_spectral_param(rho, ctx);
  const double x = std::cos(0.5 * ctx.h * rho);
  const double qn = std::pow(ctx.q, ctx.n);
  const double p = ctx.p();
  return -std::pow(ctx.q, 2.0 - 2.0 * ctx.n) * (1.0 - 2.0 * qn * x + qn * qn) /
         ((1.0 - p) * (1.0 - p));
}

inline SpectralPoint spectral_point(double rho, const QContext& ctx) {
  detail::require_spectral_param(rho, ctx);
  return {rho, std::cos(0.5 * ctx.h * rho), lambda_eig(rho, ctx)};
}

// Spherical function phi_rho(q^{2k}) through the orthogonal-polynomial
// route:  q^{nk} / (q^{2n}; q^2)_k  *  Q_k(cos(h rho/2); q^n, q^n | q^2).
inline double spherical_phi(double rho, int k, const QContext& ctx) {
  detail::require_spectral_param(rho, ctx);
  if (k < 0) throw std::domain_error("lattice index out of range");
  const double p = ctx.p();
  const double qn = std::pow(ctx.q, ctx.n);
  const double x = std::cos(0.5 * ctx.h * rho);
  const long double head =
      powl(static_cast<long double>(qn), k) / qpoch(std::pow(p, ctx.n), p, k);
  return static_cast<double>(head * alsalam_chihara(k, x, qn, qn, p));
}

// Terminating series route for the same value.  The sum is real up to
// rounding because the two rho-dependent parameters form a conjugate pair;
// the imaginary part is returned so callers can assert that it is dust.
inline std::complex<double> spherical_phi_series(double rho, int k,
                                                 const QContext& ctx) {
  detail::require_spectral_param(rho, ctx);
  if (k < 0) throw std::domain_error("lattice index out of range");
  const double p = ctx.p();
  const double qn = std::pow(ctx.q, ctx.n);
  // q^{i rho} = exp(-i h rho / 2)
  const std::complex<double> qirho(std::cos(0.5 * ctx.h * rho),
                                   -std::sin(0.5 * ctx.h * rho));
  return phi32(std::pow(p, -k), qn * qirho, qn * std::conj(qirho),
               std::pow(p, ctx.n), 0.0, p, p);
}

namespace detail {

// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
// sweep; d holds the diagonal, e the subdiagonal (one entry shorter).
inline std::vector<double> symmetric_tridiagonal_eigenvalues(
    std::vector<double> d, std::vector<double> e) {
  const std::size_t n = d.size();
  if (n == 0 || e.size() + 1 != n) {
    throw std::invalid_argument("tridiagonal dimensions disagree");
  }
  e.push_back(0.0);
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (++iter == 50) {
          throw accuracy_error("tridiagonal eigensolver failed to converge");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double pshift = 0.0;
        bool underflow = false;
        for (std::size_t ii = m; ii > l; --ii) {
          const std::size_t i = ii - 1;
          double f = s * e[i];
          const double bb = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= pshift;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - pshift;
          r = (d[i] - g) * s + 2.0 * c * bb;
          pshift = s * r;
          d[i + 1] = g + pshift;
          g = c * r - bb;
        }
        if (underflow) continue;
        d[l] -= pshift;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace detail

// Spectrum of the truncated operator after the weight conjugation that makes
// it symmetric: diagonal b_k, off-diagonal sqrt(a_k c_{k+1}).  Sorted
// ascending.
inline std::vector<double> laplace_spectrum(const QContext& ctx) {
  const TridiagonalOperator op = laplace_jacobi(ctx);
  const std::size_t K = op.a.size();
  std::vector<double> offdiag(K - 1);
  for (std::size_t k = 0; k + 1 < K; ++k) {
    offdiag[k] = std::sqrt(op.a[k] * op.c[k + 1]);
  }
  return detail::symmetric_tridiagonal_eigenvalues(op.b, offdiag);
}

}  // namespace qball
