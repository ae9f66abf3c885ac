// SPDX-License-Identifier: MIT
//
// The q-spherical transform: forward lattice sum, Plancherel density
// 1/|c(rho)|^2, trapezoid inversion on the spectral interval [0, 2 pi / h],
// the Plancherel identity, and the continuous orthogonality of the
// Al-Salam-Chihara polynomials against that density.
//
// All rho-integrals share one uniform grid rho_j = j * rho_max / M and are
// evaluated from node-major cached tables of phi_rho(q^{2k}), so every
// integral sees exactly the same nodes.  The node abscissae satisfy
// h rho_j / 2 = pi j / M, independent of q.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qball/context.hpp"
#include "qball/laplacian.hpp"
#include "qball/lattice.hpp"
#include "qball/qseries.hpp"

namespace qball {

/// Samples of a spectral-side function on the inclusive uniform grid
/// rho_j = j * rho_max / M, j = 0 .. M.  Transforms of real radial
/// functions are real at every node, so samples are stored real.
struct SpectralFunction {
  QContext ctx;
  std::vector<double> values;  // entry j = value at rho_j, size M + 1

  explicit SpectralFunction(const QContext& c) : ctx(c), values(c.M + 1, 0.0) {}

  double rho_at(int j) const { return ctx.rho_max() * j / ctx.M; }

  double operator[](int j) const { return values.at(j); }
  double& operator[](int j) { return values.at(j); }
};

namespace detail {

/// Al-Salam-Chihara values Q_0(x) .. Q_kmax(x) at a = b = q^n in one
/// recurrence pass.
inline std::vector<long double> asc_row(double x, int kmax, const QContext& ctx) {
  const long double p = ctx.p();
  const long double a = std::pow(static_cast<long double>(ctx.q), ctx.n);
  const long double ab = a * a;
  std::vector<long double> row(static_cast<std::size_t>(kmax) + 1);
  row[0] = 1.0L;
  if (kmax == 0) return row;
  row[1] = 2.0L * x - 2.0L * a;
  long double pj = p;        // p^j
  long double pj1 = 1.0L;    // p^{j-1}
  for (int j = 1; j < kmax; ++j) {
    row[j + 1] = (2.0L * x - 2.0L * a * pj) * row[j] -
                 (1.0L - pj) * (1.0L - ab * pj1) * row[j - 1];
    pj1 = pj;
    pj *= p;
  }
  return row;
}

/// Node-major table of phi_{rho_j}(q^{2k}): table[j][k], j = 0 .. M,
/// k = 0 .. kmax.  phi multiplies Q_k by q^{nk} / (q^{2n}; q^2)_k.
inline std::vector<std::vector<double>> phi_table(const QContext& ctx, int kmax) {
  if (kmax < 0) throw std::domain_error("phi_table: negative degree");
  const long double p = ctx.p();
  const long double qn = std::pow(static_cast<long double>(ctx.q), ctx.n);
  std::vector<long double> scale(static_cast<std::size_t>(kmax) + 1);
  scale[0] = 1.0L;
  long double pnk = std::pow(p, static_cast<long double>(ctx.n));  // p^{n+k}
  for (int k = 0; k < kmax; ++k) {
    scale[k + 1] = scale[k] * qn / (1.0L - pnk);
    pnk *= p;
  }
  const double pi = std::acos(-1.0);
  std::vector<std::vector<double>> table(static_cast<std::size_t>(ctx.M) + 1);
  for (int j = 0; j <= ctx.M; ++j) {
    const double x = std::cos(pi * j / ctx.M);
    const auto row = asc_row(x, kmax, ctx);
    auto& out = table[j];
    out.resize(static_cast<std::size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k) {
      out[k] = static_cast<double>(scale[k] * row[k]);
    }
  }
  return table;
}

/// Composite trapezoid over an inclusive uniform grid with spacing `step`.
inline double trapezoid(const std::vector<long double>& v, double step) {
  CompensatedSum s;
  s.add(0.5L * v.front());
  for (std::size_t j = 1; j + 1 < v.size(); ++j) s.add(v[j]);
  s.add(0.5L * v.back());
  return static_cast<double>(s.value() * step);
}

/// Same integrand restricted to even nodes: the embedded half-resolution
/// rule used for quadrature-error estimates.
inline double trapezoid_half(const std::vector<long double>& v, double step) {
  CompensatedSum s;
  s.add(0.5L * v.front());
  for (std::size_t j = 2; j + 1 < v.size(); j += 2) s.add(v[j]);
  s.add(0.5L * v.back());
  return static_cast<double>(s.value() * (2.0 * step));
}

}  // namespace detail

/// Plancherel density 1/|c(rho)|^2 as a purely real product:
///
///   (q^{2n}; q^2)_inf^2 * |(q^{2 i rho}; q^2)_inf|^2
///   ------------------------------------------------
///            |(q^{n + i rho}; q^2)_inf|^4
///
/// Nonnegative on [0, 2 pi / h] with exact zeros at both endpoints (the
/// leading factor of the numerator product is 4 sin^2(h rho / 2)).
inline double plancherel_weight(double rho, const QContext& ctx) {
  detail::require_spectral_param(rho, ctx);
  const double p = ctx.p();
  const auto tail = ctx.tail();
  const double head = qpoch_inf(std::pow(p, ctx.n), p, tail);
  const double num = qpoch_inf_abs2(1.0, ctx.h * rho, p, tail);
  const double den = qpoch_inf_abs2(std::pow(ctx.q, ctx.n), 0.5 * ctx.h * rho, p, tail);
  return head * head * num / (den * den);
}

/// Independent route to 1/|c(rho)|^2 through the q-gamma quotient
/// c(rho) = Gamma_{q^2}(n) Gamma_{q^2}(i rho) / Gamma_{q^2}((n + i rho)/2)^2.
/// The (1-q^2) powers cancel between numerator and denominator, so the two
/// routes agree exactly up to rounding.  Gamma_{q^2}(i rho) has a pole at
/// both endpoints, so the quotient is restricted to interior rho.
inline double plancherel_weight_gamma(double rho, const QContext& ctx) {
  detail::require_spectral_param(rho, ctx);
  if (rho <= 0.0 || rho >= ctx.rho_max()) {
    throw std::domain_error("plancherel_weight_gamma: interior spectral parameter required");
  }
  const double p = ctx.p();
  const auto tail = ctx.tail();
  const std::complex<double> irho(0.0, rho);
  const std::complex<double> gn = qgamma(std::complex<double>(ctx.n, 0.0), p, tail);
  const std::complex<double> gi = qgamma(irho, p, tail);
  const std::complex<double> gh =
      qgamma(0.5 * (static_cast<double>(ctx.n) + irho), p, tail);
  const std::complex<double> c = gn * gi / (gh * gh);
  return 1.0 / std::norm(c);
}

namespace detail {

/// Plancherel density at every grid node.
inline std::vector<double> plancherel_table(const QContext& ctx) {
  std::vector<double> table(static_cast<std::size_t>(ctx.M) + 1);
  const double top = ctx.rho_max();
  for (int j = 0; j <= ctx.M; ++j) {
    table[j] = plancherel_weight(top * j / ctx.M, ctx);
  }
  return table;
}

}  // namespace detail

/// Forward transform: (Ff)(rho) = sum_k f(q^{2k}) phi_rho(q^{2k}) w_k.
inline SpectralFunction forward(const RadialFunction& f) {
  int top = -1;
  for (int k = 0; k < f.ctx.K; ++k) {
    if (f.coeffs[k] != 0.0) top = k;
  }
  SpectralFunction out(f.ctx);
  if (top < 0) return out;
  const auto phi = detail::phi_table(f.ctx, top);
  std::vector<long double> weighted(static_cast<std::size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) {
    weighted[k] = static_cast<long double>(f.coeffs[k]) * lattice_weight(f.ctx, k);
  }
  for (int j = 0; j <= f.ctx.M; ++j) {
    detail::CompensatedSum s;
    for (int k = 0; k <= top; ++k) {
      s.add(weighted[k] * phi[j][k]);
    }
    out.values[j] = static_cast<double>(s.value());
  }
  return out;
}

/// Closed form of the transform of the indicator f_k:
///
///   (Ff_k)(rho) = (1 - q^{2n}) q^{-kn} ((q^{2k+2}; q^2)_{n-1} /
///                 (q^{2n}; q^2)_k) Q_k(cos(h rho / 2); q^n, q^n | q^2),
///
/// a polynomial of degree k in cos(h rho / 2).
inline SpectralFunction forward_basis(const QContext& ctx, int k) {
  if (k < 0 || k >= ctx.K) throw std::domain_error("forward_basis: index out of range");
  const long double p = ctx.p();
  const long double pref = (1.0L - std::pow(p, static_cast<long double>(ctx.n))) *
                           std::pow(static_cast<long double>(ctx.q), -ctx.n * k) *
                           qpoch(std::pow(p, k + 1.0L), ctx.p(), ctx.n - 1) /
                           qpoch(std::pow(p, static_cast<long double>(ctx.n)), ctx.p(), k);
  const double pi = std::acos(-1.0);
  SpectralFunction out(ctx);
  for (int j = 0; j <= ctx.M; ++j) {
    const auto row = detail::asc_row(std::cos(pi * j / ctx.M), k, ctx);
    out.values[j] = static_cast<double>(pref * row[k]);
  }
  return out;
}

/// Inversion: f(q^{2k}) = (1/4pi) (h / (1 - q^{2n})) *
/// integral of F(rho) phi_rho(q^{2k}) / |c(rho)|^2 over [0, 2 pi / h],
/// by composite trapezoid on F's grid.  The integrand vanishes at both
/// endpoints and extends to a smooth periodic function, so the rule
/// converges rapidly; the embedded half-resolution rule provides an error
/// estimate, and a gross deficit raises accuracy_error.
inline RadialFunction inverse(const SpectralFunction& F, int Kout) {
  const QContext& ctx = F.ctx;
  if (Kout < 1 || Kout > ctx.K) {
    throw std::domain_error("inverse: output support must lie within 1..K");
  }
  const double step = ctx.rho_max() / ctx.M;
  const double pref = ctx.h / (4.0 * std::acos(-1.0) *
                               (1.0 - std::pow(ctx.p(), ctx.n)));
  const auto phi = detail::phi_table(ctx, Kout - 1);
  const auto density = detail::plancherel_table(ctx);
  RadialFunction f(ctx);
  double scale = 0.0;
  double estimate = 0.0;
  std::vector<long double> integrand(static_cast<std::size_t>(ctx.M) + 1);
  for (int k = 0; k < Kout; ++k) {
    for (int j = 0; j <= ctx.M; ++j) {
      integrand[j] = static_cast<long double>(F.values[j]) * phi[j][k] * density[j];
    }
    const double full = pref * detail::trapezoid(integrand, step);
    const double half = pref * detail::trapezoid_half(integrand, step);
    f.coeffs[k] = full;
    scale = std::max(scale, std::fabs(full));
    estimate = std::max(estimate, std::fabs(full - half));
  }
  if (estimate > 1e-6 * std::max(1.0, scale)) {
    std::ostringstream msg;
    msg << "inverse: estimated quadrature error " << estimate
        << " with M = " << ctx.M << "; increase the node count";
    throw accuracy_error(msg.str());
  }
  return f;
}

/// Relative Plancherel defect |  ||f||^2 - (1/4pi)(h/(1-q^{2n})) *
/// integral |Ff|^2 / |c|^2  | / ||f||^2; zero function maps to 0.
inline double plancherel_residual(const RadialFunction& f) {
  const double lhs = l2_inner_radial(f, f).real();
  if (lhs == 0.0) return 0.0;
  const QContext& ctx = f.ctx;
  const SpectralFunction F = forward(f);
  const auto density = detail::plancherel_table(ctx);
  std::vector<long double> integrand(static_cast<std::size_t>(ctx.M) + 1);
  for (int j = 0; j <= ctx.M; ++j) {
    integrand[j] = static_cast<long double>(F.values[j]) * F.values[j] * density[j];
  }
  const double step = ctx.rho_max() / ctx.M;
  const double pref = ctx.h / (4.0 * std::acos(-1.0) *
                               (1.0 - std::pow(ctx.p(), ctx.n)));
  const double rhs = pref * detail::trapezoid(integrand, step);
  return std::fabs(lhs - rhs) / std::fabs(lhs);
}

/// Gram matrix of the Al-Salam-Chihara polynomials against the Plancherel
/// density: G[k][m] = (1/4pi) integral Q_k Q_m / |c|^2.  The diagonal is
/// (q^{2n}; q^2)_k^2 / (h (q^{2k+2}; q^2)_{n-1}) and off-diagonal entries
/// vanish.
inline std::vector<std::vector<double>> asc_gram(const QContext& ctx, int kmax) {
  if (kmax < 0 || kmax > 12) {
    throw std::domain_error("asc_gram: degree bound must lie in 0..12");
  }
  const double pi = std::acos(-1.0);
  const std::size_t size = static_cast<std::size_t>(kmax) + 1;
  std::vector<std::vector<long double>> rows(static_cast<std::size_t>(ctx.M) + 1);
  for (int j = 0; j <= ctx.M; ++j) {
    rows[j] = detail::asc_row(std::cos(pi * j / ctx.M), kmax, ctx);
  }
  const auto density = detail::plancherel_table(ctx);
  const double step = ctx.rho_max() / ctx.M;
  std::vector<std::vector<double>> gram(size, std::vector<double>(size, 0.0));
  std::vector<long double> integrand(static_cast<std::size_t>(ctx.M) + 1);
  for (int k = 0; k <= kmax; ++k) {
    for (int m = k; m <= kmax; ++m) {
      for (int j = 0; j <= ctx.M; ++j) {
        integrand[j] = rows[j][k] * rows[j][m] * density[j];
      }
      const double value = detail::trapezoid(integrand, step) / (4.0 * pi);
      gram[k][m] = value;
      gram[m][k] = value;
    }
  }
  return gram;
}

}  // namespace qball
