// SPDX-License-Identifier: MIT
//
// Verification checks shared by the command-line runner and the acceptance
// driver.  Every check evaluates one closed-form identity of the library
// against an independent route at a single parameter point and reports the
// worst residual together with the two compared values at that point.
//
// Tolerances are part of each check's contract and are pinned here, not in
// the callers; a check passes iff residual <= tol.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qball/berezin.hpp"
#include "qball/bergman.hpp"
#include "qball/context.hpp"
#include "qball/fock.hpp"
#include "qball/io.hpp"
#include "qball/laplacian.hpp"
#include "qball/lattice.hpp"
#include "qball/qseries.hpp"
#include "qball/spherical.hpp"

namespace qball {
namespace verify {

struct CheckResult {
  std::string suite;
  std::string id;
  std::string params;  // comma-joined key=value pairs, "-" when none
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  double lhs = 0.0;  // the two compared values at the worst point
  double rhs = 0.0;
  std::string where;  // location of the worst point within the check
};

namespace detail {

/// Tracks the largest residual seen together with its witnessing pair.
class Worst {
 public:
  void observe(double residual, double lhs, double rhs, const std::string& where) {
    if (residual >= residual_) {
      residual_ = residual;
      lhs_ = lhs;
      rhs_ = rhs;
      where_ = where;
    }
  }

  /// Relative disagreement with the scale floored at 1.
  void observe_rel(double lhs, double rhs, const std::string& where) {
    const double scale = std::max({1e-300, std::fabs(lhs), std::fabs(rhs)});
    observe(std::fabs(lhs - rhs) / scale, lhs, rhs, where);
  }

  CheckResult finish(const std::string& suite, const std::string& id,
                     const std::string& params, double tol) const {
    CheckResult out;
    out.suite = suite;
    out.id = id;
    out.params = params;
    out.residual = residual_;
    out.tol = tol;
    out.pass = residual_ <= tol;
    out.lhs = lhs_;
    out.rhs = rhs_;
    out.where = where_;
    return out;
  }

 private:
  double residual_ = 0.0;
  double lhs_ = 0.0;
  double rhs_ = 0.0;
  std::string where_;
};

inline std::string params_q(double q) { return "q=" + format_double(q); }

inline std::string params_qn(double q, int n) {
  return "q=" + format_double(q) + ",n=" + std::to_string(n);
}

inline std::string params_qna(double q, int n, double alpha) {
  return params_qn(q, n) + ",alpha=" + format_double(alpha);
}

inline std::string at(const char* key, double v) {
  return std::string(key) + "=" + format_double(v);
}

inline std::string at(const char* key, int v) {
  return std::string(key) + "=" + std::to_string(v);
}

/// phi_rho on the truncated lattice, assembled from one recurrence pass.
inline RadialFunction phi_vector(double rho, const QContext& ctx) {
  const auto row = qball::detail::asc_row(std::cos(0.5 * ctx.h * rho), ctx.K - 1, ctx);
  const long double p = ctx.p();
  const long double qn = std::pow(static_cast<long double>(ctx.q), ctx.n);
  RadialFunction phi(ctx);
  long double scale = 1.0L;
  long double pnk = std::pow(p, static_cast<long double>(ctx.n));
  for (int k = 0; k < ctx.K; ++k) {
    phi.coeffs[static_cast<std::size_t>(k)] =
        static_cast<double>(scale * row[static_cast<std::size_t>(k)]);
    scale *= qn / (1.0L - pnk);
    pnk *= p;
  }
  return phi;
}

/// Deterministic finite test functions shared by the randomized checks.
inline std::vector<RadialFunction> random_functions(const QContext& ctx, int count,
                                                    int support, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<RadialFunction> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    RadialFunction f(ctx);
    for (int k = 0; k < support && k < ctx.K; ++k) {
      f.coeffs[static_cast<std::size_t>(k)] = u(gen);
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// qcore: q-series building blocks
// ---------------------------------------------------------------------------

inline CheckResult poch_splitting(double q) {
  const double p = q * q;
  detail::Worst w;
  for (double a : {0.35, -0.8, 1.6}) {
    for (auto [m, l] : {std::pair<int, int>{0, 5}, {3, 4}, {7, 9}}) {
      const double whole = qpoch(a, p, m + l);
      const double split = qpoch(a, p, m) * qpoch(a * std::pow(p, m), p, l);
      w.observe_rel(whole, split, detail::at("a", a) + "," + detail::at("m", m));
    }
  }
  return w.finish("qcore", "poch-splitting", detail::params_q(q), 1e-13);
}

inline CheckResult gamma_recurrence(double q) {
  const double p = q * q;
  detail::Worst w;
  for (double x : {0.5, 1.5, 2.5, 4.0, 6.5}) {
    const double lhs = qgamma(x + 1.0, p);
    const double rhs = (1.0 - std::pow(p, x)) / (1.0 - p) * qgamma(x, p);
    w.observe_rel(lhs, rhs, detail::at("x", x));
  }
  return w.finish("qcore", "gamma-recurrence", detail::params_q(q), 1e-12);
}

inline CheckResult product_telescoping(double q) {
  const double p = q * q;
  const TailPolicy tail;
  detail::Worst w;
  for (double a : {0.4, -0.6, 0.95}) {
    const double lhs = qpoch_inf(a, p, tail);
    const double rhs = (1.0 - a) * qpoch_inf(a * p, p, tail);
    w.observe_rel(lhs, rhs, detail::at("a", a));
  }
  return w.finish("qcore", "product-telescoping", detail::params_q(q), 1e-13);
}

inline CheckResult conjugate_modulus(double q) {
  const double p = q * q;
  const TailPolicy tail;
  detail::Worst w;
  for (double r : {0.5, 0.9}) {
    for (double theta : {0.3, 1.2, 2.9}) {
      const double lhs = qpoch_inf_abs2(r, theta, p, tail);
      const std::complex<double> z(r * std::cos(theta), r * std::sin(theta));
      const double rhs = std::norm(qpoch_inf(z, p, tail));
      w.observe_rel(lhs, rhs, detail::at("r", r) + "," + detail::at("theta", theta));
    }
  }
  return w.finish("qcore", "conjugate-modulus", detail::params_q(q), 1e-12);
}

// ---------------------------------------------------------------------------
// lattice: weights and integrals
// ---------------------------------------------------------------------------

inline CheckResult jackson_constant(double q) {
  const double p = q * q;
  std::vector<double> ones(720, 1.0);
  detail::Worst w;
  w.observe_rel(jackson_integral(ones, p), 1.0, "");
  return w.finish("lattice", "jackson-constant", detail::params_q(q), 1e-14);
}

inline CheckResult weight_ratio(double q, int n) {
  QContext ctx(q, n);
  const double p = ctx.p();
  detail::Worst w;
  for (int k = 0; k <= 20; ++k) {
    const double lhs = lattice_weight(ctx, k + 1) / lattice_weight(ctx, k);
    const double rhs = std::pow(q, -2.0 * n) * (1.0 - std::pow(p, k + n)) /
                       (1.0 - std::pow(p, k + 1));
    w.observe_rel(lhs, rhs, detail::at("k", k));
  }
  return w.finish("lattice", "weight-ratio", detail::params_qn(q, n), 1e-13);
}

inline CheckResult integral_embedding(double q, int n, int K) {
  QContext ctx(q, n);
  ctx.K = K;
  ctx.check();
  RadialFunction f(ctx);
  std::mt19937 gen(40123u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 12; ++k) f.coeffs[static_cast<std::size_t>(k)] = u(gen);
  const double direct = invariant_integral_radial(f);
  const double embedded = invariant_integral_multi(MultiRadialFunction::embed(f));
  detail::Worst w;
  w.observe_rel(direct, embedded, "");
  return w.finish("lattice", "integral-embedding", detail::params_qn(q, n), 1e-12);
}

// ---------------------------------------------------------------------------
// eigen: the radial Laplace operator
// ---------------------------------------------------------------------------

inline CheckResult eigenrelation(double q, int n, int K) {
  QContext ctx(q, n);
  ctx.K = K;
  ctx.check();
  const auto op = laplace_jacobi(ctx);
  detail::Worst w;
  for (int i = 0; i <= 10; ++i) {
    const double rho = ctx.rho_max() * i / 10.0;
    const RadialFunction phi = detail::phi_vector(rho, ctx);
    const double lambda = lambda_eig(rho, ctx);
    const RadialFunction lap = apply(op, phi);
    double scale = 0.0;
    for (double v : phi.coeffs) scale = std::max(scale, std::fabs(v));
    for (int k = 0; k <= last_exact_row(ctx); ++k) {
      const double lhs = lap[k];
      const double rhs = lambda * phi[k];
      w.observe(std::fabs(lhs - rhs) / scale, lhs, rhs,
                detail::at("rho-node", i) + "," + detail::at("k", k));
    }
  }
  return w.finish("eigen", "eigenrelation", detail::params_qn(q, n), 1e-10);
}

inline CheckResult difference_form(double q, int n, int K) {
  QContext ctx(q, n);
  ctx.K = K;
  ctx.check();
  const auto op = laplace_jacobi(ctx);
  detail::Worst w;
  const auto funcs = detail::random_functions(ctx, 20, ctx.K - 2, 90217u);
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    const RadialFunction a = apply(op, funcs[i]);
    const RadialFunction b = apply_difference_form(funcs[i]);
    double scale = 0.0;
    for (int k = 0; k <= last_exact_row(ctx); ++k) scale = std::max(scale, std::fabs(a[k]));
    for (int k = 0; k <= last_exact_row(ctx); ++k) {
      w.observe(std::fabs(a[k] - b[k]) / scale, a[k], b[k],
                detail::at("draw", static_cast<int>(i)) + "," + detail::at("k", k));
    }
  }
  return w.finish("eigen", "difference-form", detail::params_qn(q, n), 1e-12);
}

inline CheckResult row_sums(double q, int n, int K) {
  QContext ctx(q, n);
  ctx.K = K;
  ctx.check();
  const auto op = laplace_jacobi(ctx);
  RadialFunction ones(ctx);
  for (double& v : ones.coeffs) v = 1.0;
  const RadialFunction out = apply(op, ones);
  double scale = 0.0;
  for (std::size_t k = 0; k < op.a.size(); ++k) {
    scale = std::max({scale, std::fabs(op.a[k]), std::fabs(op.b[k]), std::fabs(op.c[k])});
  }
  detail::Worst w;
  for (int k = 0; k <= last_exact_row(ctx); ++k) {
    w.observe(std::fabs(out[k]) / scale, out[k], 0.0, detail::at("k", k));
  }
  return w.finish("eigen", "row-sums", detail::params_qn(q, n), 1e-13);
}

inline CheckResult weighted_symmetry(double q, int n) {
  QContext ctx(q, n);
  const auto op = laplace_jacobi(ctx);
  detail::Worst w;
  for (int k = 0; k <= 30; ++k) {
    const double lhs = lattice_weight(ctx, k + 1) * op.a[static_cast<std::size_t>(k)];
    const double rhs = lattice_weight(ctx, k) * op.c[static_cast<std::size_t>(k) + 1];
    w.observe_rel(lhs, rhs, detail::at("k", k));
  }
  return w.finish("eigen", "weighted-symmetry", detail::params_qn(q, n), 1e-13);
}

inline CheckResult spectrum_range(double q, int n) {
  QContext ctx(q, n);
  ctx.K = 80;
  ctx.check();
  const double lo = lambda_eig(ctx.rho_max(), ctx) - 1e-3;
  const double hi = lambda_eig(0.0, ctx) + 1e-3;
  detail::Worst w;
  w.observe(0.0, lo, hi, "");
  for (double ev : laplace_spectrum(ctx)) {
    if (ev < lo) w.observe(lo - ev, ev, lo, "below");
    if (ev > hi) w.observe(ev - hi, ev, hi, "above");
  }
  return w.finish("eigen", "spectrum-range", detail::params_qn(q, n), 0.0);
}

// ---------------------------------------------------------------------------
// fock: the truncated matrix model
// ---------------------------------------------------------------------------

inline CheckResult fock_relations(double q, int n, double alpha) {
  QContext ctx(q, n);
  MonomialBasis basis(ctx);
  detail::Worst w;
  for (double weight : {alpha, std::numeric_limits<double>::infinity()}) {
    const auto residuals = relation_residuals(weight, basis);
    const std::string tag = std::isinf(weight) ? "flat " : "weighted ";
    for (const auto& [name, value] : residuals) {
      if (name.rfind("y-", 0) == 0) continue;  // flat diagonalization is its own check
      w.observe(value, value, 0.0, tag + name);
    }
  }
  return w.finish("fock", "defining-relations", detail::params_qna(q, n, alpha), 1e-12);
}

inline CheckResult fock_normal_order(double q, int n) {
  QContext ctx(q, n);
  MonomialBasis basis(ctx);
  MonomialBasis words(ctx, basis.max_degree() / 2);
  detail::Worst w;
  for (std::size_t idx = 0; idx < words.size(); ++idx) {
    const double r = normal_order_residual(words.exponent(idx), basis);
    w.observe(r, r, 0.0, detail::at("word", static_cast<int>(idx)));
  }
  return w.finish("fock", "normal-ordering", detail::params_qn(q, n), 1e-12);
}

inline CheckResult fock_gram_closed_form(double q, int n, double alpha) {
  QContext ctx(q, n);
  const WeightParam wp(ctx, alpha);
  MonomialBasis basis(ctx);
  const auto g = gram_diagonal(alpha, basis);
  detail::Worst w;
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    w.observe_rel(g[idx], monomial_norm(basis.exponent(idx), wp),
                  detail::at("index", static_cast<int>(idx)));
  }
  return w.finish("fock", "gram-closed-form", detail::params_qna(q, n, alpha), 1e-12);
}

inline CheckResult fock_flat_diagonal(double q, int n) {
  QContext ctx(q, n);
  MonomialBasis basis(ctx);
  const auto residuals =
      relation_residuals(std::numeric_limits<double>::infinity(), basis);
  detail::Worst w;
  for (const char* name : {"y-offdiag", "y-spectrum", "y-commute", "y-shift"}) {
    const double value = residuals.at(name);
    w.observe(value, value, 0.0, name);
  }
  return w.finish("fock", "flat-diagonalization", detail::params_qn(q, n), 1e-12);
}

// ---------------------------------------------------------------------------
// bergman: norms, Toeplitz calculus and covariant symbols
// ---------------------------------------------------------------------------

inline CheckResult monomial_norms(double q, int n, double alpha) {
  QContext ctx(q, n);
  const WeightParam wp(ctx, alpha);
  const double p = ctx.p();
  MonomialBasis basis(ctx);
  const auto g = gram_diagonal(alpha, basis);

  // Truncation of the weighted-integral route: the integrand decays like
  // p^{(alpha+1) k1}, so the cutoff is sized to push the dropped tail below
  // the comparison tolerance.
  const int Kw = std::clamp(
      static_cast<int>(std::ceil(32.0 / ((alpha + 1.0) * -std::log(p)))), 16, 200);
  std::vector<double> pk(static_cast<std::size_t>(Kw) + 1);
  std::vector<long double> first(static_cast<std::size_t>(Kw) + 1);
  std::vector<long double> rest(static_cast<std::size_t>(n) * Kw + 1);
  for (int k = 0; k <= Kw; ++k) {
    pk[static_cast<std::size_t>(k)] = std::pow(p, k);
    first[static_cast<std::size_t>(k)] =
        std::pow(static_cast<long double>(p), (alpha + 1.0L) * k);
  }
  for (std::size_t s = 0; s < rest.size(); ++s) {
    rest[s] = std::pow(static_cast<long double>(p), static_cast<long double>(s));
  }
  const double pref = qpoch(std::pow(p, alpha + 1.0), p, n);

  detail::Worst w;
  std::vector<double> y(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    if (basis.degree(idx) > 6) continue;
    const std::vector<int>& m = basis.exponent(idx);
    const double closed = monomial_norm(m, wp);
    w.observe_rel(closed, g[idx], detail::at("index", static_cast<int>(idx)) + ",gram");

    qball::detail::CompensatedSum acc;
    for_each_simplex_point(n, Kw, [&](const std::vector<int>& kk) {
      std::size_t tail_sum = 0;
      for (std::size_t j = 0; j < kk.size(); ++j) {
        y[j] = pk[static_cast<std::size_t>(kk[j])];
        if (j > 0) tail_sum += static_cast<std::size_t>(kk[j]);
      }
      acc.add(static_cast<long double>(normal_order_diagonal(m, y, p)) *
              first[static_cast<std::size_t>(kk[0])] * rest[tail_sum]);
    });
    const double integral = pref * static_cast<double>(acc.value());
    w.observe_rel(closed, integral, detail::at("index", static_cast<int>(idx)) + ",integral");
  }
  return w.finish("bergman", "monomial-norms", detail::params_qna(q, n, alpha), 1e-11);
}

inline CheckResult norm_spots() {
  detail::Worst w;
  QContext c1(0.5, 1);
  w.observe_rel(monomial_norm({0}, WeightParam(c1, 1.0)), 1.0, "constant");
  w.observe_rel(monomial_norm({1}, WeightParam::boundary(c1, 0.0)), 0.8, "n=1");
  QContext c2(0.5, 2);
  w.observe_rel(monomial_norm({1, 0}, WeightParam::boundary(c2, 0.0)), 16.0 / 21.0, "n=2");
  return w.finish("bergman", "norm-spots", "-", 1e-12);
}

namespace detail {

/// Direct quotient <f_k z^{m'}, z^{m'}> / ||z^{m'}||^2 for m' = (0,...,0,m):
/// the word z^{*m'} f_k z^{m'} reduces to (q^2 y_n; q^2)_m f_{k-m}(y_1) on
/// the joint spectrum, a finitely supported simplex function.
inline double toeplitz_direct_quotient(int k, int m, const WeightParam& w) {
  const QContext& ctx = w.ctx;
  const double p = ctx.p();
  if (m > k) return 0.0;
  MultiRadialFunction g(ctx);
  if (ctx.n == 1) {
    g.set({k - m}, qpoch(std::pow(p, k - m + 1), p, m));
  } else {
    for_each_simplex_point(ctx.n - 1, k - m + 1, [&](const std::vector<int>& tail) {
      std::vector<int> key(static_cast<std::size_t>(ctx.n));
      key[0] = k - m;
      std::copy(tail.begin(), tail.end(), key.begin() + 1);
      g.set(key, qpoch(std::pow(p, key.back() + 1), p, m));
    });
  }
  std::vector<int> mprime(static_cast<std::size_t>(ctx.n), 0);
  mprime.back() = m;
  return weighted_integral(g, w.alpha) / monomial_norm(mprime, w);
}

}  // namespace detail

inline CheckResult toeplitz_spectra(double q, int n, double alpha) {
  QContext ctx(q, n);
  const WeightParam wp(ctx, alpha);
  detail::Worst w;
  for (int k = 0; k <= 8; ++k) {
    for (int m = 0; m <= std::min(k, 8); ++m) {
      const double closed = toeplitz_coefficient(k, m, wp);
      const double direct = detail::toeplitz_direct_quotient(k, m, wp);
      w.observe_rel(closed, direct, detail::at("k", k) + "," + detail::at("m", m));
    }
  }
  return w.finish("bergman", "toeplitz-spectra", detail::params_qna(q, n, alpha), 1e-11);
}

inline CheckResult toeplitz_vanishing(double q, int n, double alpha) {
  QContext ctx(q, n);
  const WeightParam wp(ctx, alpha);
  detail::Worst w;
  w.observe(0.0, 0.0, 0.0, "");
  for (int k = 0; k <= 8; ++k) {
    const auto op = toeplitz_radial(k, wp);
    for (int d = k + 1; d < op.cutoff(); ++d) {
      const double v = op.values[static_cast<std::size_t>(d)];
      w.observe(std::fabs(v), v, 0.0, detail::at("k", k) + "," + detail::at("d", d));
    }
  }
  return w.finish("bergman", "toeplitz-vanishing", detail::params_qna(q, n, alpha), 0.0);
}

inline CheckResult covariant_defining(double q, int n, double alpha) {
  QContext ctx(q, n);
  const WeightParam wp(ctx, alpha);
  detail::Worst w;
  for (int m = 0; m <= 8; ++m) {
    const auto closed = covariant_symbol_projection(m, wp);
    const auto pm = degree_projection(m, wp);
    double scale = 0.0;
    std::vector<double> lhs(9), rhs(9);
    for (int l = 0; l <= 8; ++l) {
      lhs[static_cast<std::size_t>(l)] = closed[l] * lattice_weight(ctx, l);
      rhs[static_cast<std::size_t>(l)] = trq(pm * toeplitz_radial(l, wp));
      scale = std::max(scale, std::fabs(lhs[static_cast<std::size_t>(l)]));
    }
    for (int l = 0; l <= 8; ++l) {
      const double a = lhs[static_cast<std::size_t>(l)];
      const double b = rhs[static_cast<std::size_t>(l)];
      w.observe(std::fabs(a - b) / scale, a, b,
                detail::at("m", m) + "," + detail::at("l", l));
    }
  }
  return w.finish("bergman", "covariant-defining", detail::params_qna(q, n, alpha), 1e-12);
}

inline CheckResult projection_symbol(double q, int n, double alpha) {
  QContext ctx(q, n);
  const WeightParam wp(ctx, alpha);
  const double p = ctx.p();
  const RadialFunction sym = covariant_symbol(degree_projection(0, wp));
  detail::Worst w;
  for (int l = 0; l <= 40 && l < ctx.K; ++l) {
    const double target = std::pow(p, l * (alpha + n + 1.0));
    if (target < 1e-200) break;
    w.observe_rel(sym[l], target, detail::at("l", l));
  }
  return w.finish("bergman", "projection-symbol", detail::params_qna(q, n, alpha), 1e-12);
}

inline CheckResult degree_mass(double q, int n) {
  QContext ctx(q, n);
  const double p = ctx.p();
  detail::Worst w;
  for (int d = 0; d <= 6; ++d) {
    // Enumeration route: sum over compositions of d of q^{2 sum_i (i-1) m_i}.
    double sum = 0.0;
    std::vector<int> m(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> walk = [&](int slot, int left) {
      if (slot + 1 == n) {
        m[static_cast<std::size_t>(slot)] = left;
        double e = 0.0;
        for (int i = 0; i < n; ++i) e += i * m[static_cast<std::size_t>(i)];
        sum += std::pow(p, e);
        return;
      }
      for (int v = 0; v <= left; ++v) {
        m[static_cast<std::size_t>(slot)] = v;
        walk(slot + 1, left - v);
      }
    };
    walk(0, d);
    w.observe_rel(trace_degree_weight(ctx, d) * std::pow(p, n * d), sum, detail::at("d", d));
  }
  return w.finish("bergman", "degree-mass", detail::params_qn(q, n), 1e-13);
}

// ---------------------------------------------------------------------------
// spherical: transform and Plancherel machinery
// ---------------------------------------------------------------------------

inline CheckResult forward_constant(double q, int n, int M) {
  QContext ctx(q, n);
  ctx.M = M;
  ctx.check();
  const double target = qpoch(ctx.p(), ctx.p(), n);
  const SpectralFunction F = forward(RadialFunction::basis(ctx, 0));
  detail::Worst w;
  for (int j = 0; j <= ctx.M; ++j) {
    w.observe_rel(F[j], target, detail::at("node", j));
  }
  return w.finish("spherical", "forward-constant", detail::params_qn(q, n), 1e-13);
}

inline CheckResult density_routes(double q, int n) {
  QContext ctx(q, n);
  detail::Worst w;
  for (int i = 1; i <= 9; ++i) {
    const double rho = ctx.rho_max() * i / 10.0;
    w.observe_rel(plancherel_weight(rho, ctx), plancherel_weight_gamma(rho, ctx),
                  detail::at("rho-node", i));
  }
  return w.finish("spherical", "density-routes", detail::params_qn(q, n), 1e-10);
}

inline CheckResult basis_transform(double q, int n, int M) {
  QContext ctx(q, n);
  ctx.M = M;
  ctx.check();
  detail::Worst w;
  for (int k = 0; k <= 10; ++k) {
    const SpectralFunction a = forward(RadialFunction::basis(ctx, k));
    const SpectralFunction b = forward_basis(ctx, k);
    double scale = 0.0;
    for (double v : b.values) scale = std::max(scale, std::fabs(v));
    for (int j = 0; j <= ctx.M; ++j) {
      w.observe(std::fabs(a[j] - b[j]) / scale, a[j], b[j],
                detail::at("k", k) + "," + detail::at("node", j));
    }
  }
  return w.finish("spherical", "basis-transform", detail::params_qn(q, n), 1e-11);
}

inline CheckResult diagonalization(double q, int n, int M) {
  QContext ctx(q, n);
  ctx.M = M;
  ctx.check();
  const auto op = laplace_jacobi(ctx);
  const auto funcs = detail::random_functions(ctx, 3, 16, 61502u);
  detail::Worst w;
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    const SpectralFunction lhs = forward(apply(op, funcs[i]));
    const SpectralFunction base = forward(funcs[i]);
    double scale = 0.0;
    std::vector<double> rhs(static_cast<std::size_t>(ctx.M) + 1);
    for (int j = 0; j <= ctx.M; ++j) {
      rhs[static_cast<std::size_t>(j)] = lambda_eig(base.rho_at(j), ctx) * base[j];
      scale = std::max(scale, std::fabs(rhs[static_cast<std::size_t>(j)]));
    }
    for (int i2 = 0; i2 <= 10; ++i2) {
      const int j = ctx.M * i2 / 10;
      const double a = lhs[j];
      const double b = rhs[static_cast<std::size_t>(j)];
      w.observe(std::fabs(a - b) / scale, a, b,
                detail::at("draw", static_cast<int>(i)) + "," + detail::at("node", j));
    }
  }
  return w.finish("spherical", "diagonalization", detail::params_qn(q, n), 1e-10);
}

// ---------------------------------------------------------------------------
// plancherel: norm identity and inversion
// ---------------------------------------------------------------------------

inline CheckResult parseval(double q, int n, int M) {
  QContext ctx(q, n);
  ctx.M = M;
  ctx.check();
  detail::Worst w;
  const auto funcs = detail::random_functions(ctx, 10, 16, 77001u);
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    const double r = plancherel_residual(funcs[i]);
    w.observe(r, r, 0.0, detail::at("draw", static_cast<int>(i)));
  }
  return w.finish("plancherel", "parseval", detail::params_qn(q, n), 1e-8);
}

/// Round trip on the indicator f0 and, independently, inversion of its known
/// constant transform.  Random far-out lattice functions are deliberately not
/// round-tripped: their transforms reach q^{-2 n k} in magnitude while the
/// recovered coefficients are O(1), so double-precision samples cannot carry
/// the cancellation and the inverse correctly refuses them.
inline CheckResult inversion_roundtrip(double q, int n, int M) {
  QContext ctx(q, n);
  ctx.M = M;
  ctx.check();
  detail::Worst w;
  const int Kout = 24;
  const RadialFunction f0 = RadialFunction::basis(ctx, 0);
  const RadialFunction back = inverse(forward(f0), Kout);
  for (int k = 0; k < Kout; ++k) {
    w.observe(std::fabs(back[k] - f0[k]), back[k], f0[k], detail::at("k", k));
  }
  SpectralFunction constant(ctx);
  const double value = qpoch(ctx.p(), ctx.p(), n);
  for (double& v : constant.values) v = value;
  const RadialFunction from_const = inverse(constant, Kout);
  for (int k = 0; k < Kout; ++k) {
    w.observe(std::fabs(from_const[k] - f0[k]), from_const[k], f0[k],
              "constant," + detail::at("k", k));
  }
  return w.finish("plancherel", "inversion-roundtrip", detail::params_qn(q, n), 1e-8);
}

// ---------------------------------------------------------------------------
// orthogonality: continuous Gram matrices
// ---------------------------------------------------------------------------

inline CheckResult asc_orthogonality(double q, int n, int M) {
  QContext ctx(q, n);
  ctx.M = std::max(M, 512);
  ctx.check();
  const double p = ctx.p();
  const int kmax = 10;
  const auto gram = asc_gram(ctx, kmax);
  detail::Worst w;
  double scale = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    const double poch = qpoch(std::pow(p, n), p, k);
    const double diag = poch * poch / (ctx.h * qpoch(std::pow(p, k + 1), p, n - 1));
    scale = std::max(scale, diag);
    w.observe_rel(gram[k][k], diag, detail::at("k", k));
  }
  for (int k = 0; k <= kmax; ++k) {
    for (int m = 0; m <= kmax; ++m) {
      if (k == m) continue;
      w.observe(std::fabs(gram[k][m]) / scale, gram[k][m], 0.0,
                detail::at("k", k) + "," + detail::at("m", m));
    }
  }
  return w.finish("orthogonality", "asc-orthogonality", detail::params_qn(q, n), 1e-8);
}

inline CheckResult qhahn_orthogonality(double q, int n, double alpha, int M) {
  QContext ctx(q, n);
  ctx.M = std::max(M, 512);
  ctx.check();
  const WeightParam wp(ctx, alpha);
  const double p = ctx.p();
  const auto tail = ctx.tail();
  const int mmax = 8;
  const auto gram = qhahn_gram(mmax, wp);
  detail::Worst w;
  double scale = 0.0;
  for (int m = 0; m <= mmax; ++m) {
    const double inf1 = qpoch_inf(wp.t * std::pow(p, n + m + 1), p, tail);
    const double diag = 1.0 / (ctx.h * inf1 * inf1 *
                               qpoch_inf(std::pow(p, m + 1), p, tail) *
                               qpoch_inf(std::pow(p, n + m), p, tail));
    scale = std::max(scale, diag);
    w.observe_rel(gram[m][m], diag, detail::at("m", m));
  }
  for (int m = 0; m <= mmax; ++m) {
    for (int l = 0; l <= mmax; ++l) {
      if (m == l) continue;
      w.observe(std::fabs(gram[m][l]) / scale, gram[m][l], 0.0,
                detail::at("m", m) + "," + detail::at("l", l));
    }
  }
  return w.finish("orthogonality", "qhahn-orthogonality", detail::params_qna(q, n, alpha),
                  1e-8);
}

inline CheckResult spectral_projection(double q, int n, double alpha) {
  QContext ctx(q, n);
  ctx.K = 128;  // the transformed symbol has an infinite tail; see the module notes
  ctx.M = 64;
  ctx.check();
  const WeightParam wp(ctx, alpha);
  detail::Worst w;
  for (int m = 0; m <= 6; ++m) {
    const RadialFunction sym = covariant_symbol(degree_projection(m, wp, m + 1));
    const SpectralFunction F = forward(sym);
    double scale = 0.0;
    std::vector<double> closed(static_cast<std::size_t>(ctx.M) + 1);
    for (int j = 0; j <= ctx.M; ++j) {
      closed[static_cast<std::size_t>(j)] = qhahn_spectrum(m, F.rho_at(j), wp);
      scale = std::max(scale, std::fabs(closed[static_cast<std::size_t>(j)]));
    }
    for (int j = 0; j <= ctx.M; ++j) {
      const double a = closed[static_cast<std::size_t>(j)];
      const double b = F[j];
      w.observe(std::fabs(a - b) / scale, a, b,
                detail::at("m", m) + "," + detail::at("node", j));
    }
  }
  return w.finish("orthogonality", "spectral-projection", detail::params_qna(q, n, alpha),
                  1e-9);
}

// ---------------------------------------------------------------------------
// berezin: transform identities
// ---------------------------------------------------------------------------

inline CheckResult indicator_transform(double q, int n, double alpha, int K) {
  QContext ctx(q, n);
  ctx.K = K;
  ctx.check();
  const WeightParam wp(ctx, alpha);
  const double p = ctx.p();
  const RadialFunction image = berezin_radial(RadialFunction::basis(ctx, 0), wp);
  const double head = qpoch(wp.t * p, p, n);
  const double ratio = wp.t * std::pow(p, n + 1);
  detail::Worst w;
  long double power = 1.0L;
  for (int k = 0; k <= 40 && k < ctx.K; ++k) {
    w.observe_rel(image[k], static_cast<double>(head * power), detail::at("k", k));
    power *= ratio;
  }
  return w.finish("berezin", "indicator-transform", detail::params_qna(q, n, alpha), 1e-12);
}

inline CheckResult multiplier_intertwining(double q, int n, double alpha) {
  QContext ctx(q, n);
  ctx.K = 128;
  ctx.M = 128;
  ctx.check();
  const WeightParam wp(ctx, alpha);
  detail::Worst w;
  for (int k = 0; k <= 6; ++k) {
    const RadialFunction fk = RadialFunction::basis(ctx, k);
    const SpectralFunction lhs = forward(berezin_radial(fk, wp));
    const SpectralFunction base = forward(fk);
    std::vector<double> rhs(static_cast<std::size_t>(ctx.M) + 1);
    double scale = 0.0;
    for (int j = 0; j <= ctx.M; ++j) {
      rhs[static_cast<std::size_t>(j)] = symbol_b(base.rho_at(j), wp) * base[j];
      scale = std::max(scale, std::fabs(rhs[static_cast<std::size_t>(j)]));
    }
    for (int j = 0; j <= ctx.M; ++j) {
      const double a = lhs[j];
      const double b = rhs[static_cast<std::size_t>(j)];
      w.observe(std::fabs(a - b) / scale, a, b,
                detail::at("k", k) + "," + detail::at("node", j));
    }
  }
  return w.finish("berezin", "multiplier-intertwining", detail::params_qna(q, n, alpha),
                  1e-9);
}

inline CheckResult laplace_commutation(double q, int n, double alpha, int K) {
  QContext ctx(q, n);
  ctx.K = K;
  ctx.check();
  const WeightParam wp(ctx, alpha);
  const auto op = laplace_jacobi(ctx);
  RadialFunction f(ctx);
  f.coeffs[2] = 1.0;
  f.coeffs[5] = 0.5;
  const RadialFunction a = apply(op, berezin_radial(f, wp));
  const RadialFunction b = berezin_radial(apply(op, f), wp);
  double scale = 0.0;
  for (int k = 0; k + 1 < ctx.K; ++k) scale = std::max(scale, std::fabs(a[k]));
  detail::Worst w;
  for (int k = 0; k + 1 < ctx.K; ++k) {
    w.observe(std::fabs(a[k] - b[k]) / scale, a[k], b[k], detail::at("k", k));
  }
  return w.finish("berezin", "laplace-commutation", detail::params_qna(q, n, alpha), 1e-10);
}

// ---------------------------------------------------------------------------
// expansion: the small-t asymptotics
// ---------------------------------------------------------------------------

inline CheckResult remainder_slope(double q, int n, int K) {
  QContext ctx(q, n);
  ctx.K = K;
  ctx.check();
  const auto limit =
      laplacian_from_limit(RadialFunction::basis(ctx, 2), {1e-2, 1e-3, 1e-4});
  detail::Worst w;
  w.observe(std::fabs(limit.slope - 2.0), limit.slope, 2.0, "");
  return w.finish("expansion", "remainder-slope", detail::params_qn(q, n), 0.1);
}

inline CheckResult expansion_partial_sums(double q, int n, int K) {
  QContext ctx(q, n);
  ctx.K = K;
  ctx.check();
  const WeightParam wp = WeightParam::from_t(ctx, 0.1);
  detail::Worst w;
  for (int support : {0, 2}) {
    const RadialFunction f = RadialFunction::basis(ctx, support);
    const RadialFunction kernel = berezin_radial(f, wp);
    const RadialFunction series = berezin_expansion(f, wp, 20);
    double scale = 0.0;
    for (double v : kernel.coeffs) scale = std::max(scale, std::fabs(v));
    for (int k = 0; k < ctx.K; ++k) {
      w.observe(std::fabs(series[k] - kernel[k]) / scale, series[k], kernel[k],
                detail::at("input", support) + "," + detail::at("k", k));
    }
  }
  return w.finish("expansion", "partial-sums", detail::params_qn(q, n), 1e-10);
}

inline CheckResult expansion_values(double q, int n) {
  QContext ctx(q, n);
  detail::Worst w;
  for (int j = 0; j <= 10; ++j) {
    for (int i = 0; i <= 10; ++i) {
      const double rho = ctx.rho_max() * i / 10.0;
      const double lhs = expansion_scalar(j, lambda_eig(rho, ctx), ctx);
      const double rhs = spherical_phi(rho, j, ctx);
      w.observe(std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)), lhs, rhs,
                detail::at("j", j) + "," + detail::at("rho-node", i));
    }
  }
  return w.finish("expansion", "recurrence-values", detail::params_qn(q, n), 1e-10);
}

// ---------------------------------------------------------------------------
// Suite runner
// ---------------------------------------------------------------------------

/// Parameter grid for a verification run; every combination is visited by
/// each check that consumes the respective parameters.
struct VerifyGrid {
  std::vector<double> qs{0.6};
  std::vector<int> ns{1};
  std::vector<double> alphas{1.0};
  int K = 64;
  int M = 4096;
  double tol_override = 0.0;  // > 0 replaces every check tolerance
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "all",        "qcore",      "lattice", "fock",    "bergman",  "eigen",
      "spherical",  "plancherel", "orthogonality",      "berezin",  "expansion"};
  return names;
}

inline std::vector<CheckResult> run_suite(const std::string& suite,
                                          const VerifyGrid& grid) {
  const bool all = suite == "all";
  const auto wants = [&](const char* name) { return all || suite == name; };
  std::vector<CheckResult> out;
  const auto add = [&](CheckResult r) {
    if (grid.tol_override > 0.0) {
      r.tol = grid.tol_override;
      r.pass = r.residual <= r.tol;
    }
    out.push_back(std::move(r));
  };

  if (wants("qcore")) {
    for (double q : grid.qs) {
      add(poch_splitting(q));
      add(gamma_recurrence(q));
      add(product_telescoping(q));
      add(conjugate_modulus(q));
    }
  }
  if (wants("lattice")) {
    for (double q : grid.qs) {
      add(jackson_constant(q));
      for (int n : grid.ns) {
        add(weight_ratio(q, n));
        add(integral_embedding(q, n, grid.K));
      }
    }
  }
  if (wants("eigen")) {
    for (double q : grid.qs) {
      for (int n : grid.ns) {
        add(eigenrelation(q, n, grid.K));
        add(difference_form(q, n, grid.K));
        add(row_sums(q, n, grid.K));
        add(weighted_symmetry(q, n));
        add(spectrum_range(q, n));
      }
    }
  }
  if (wants("fock")) {
    for (double q : grid.qs) {
      for (int n : grid.ns) {
        add(fock_normal_order(q, n));
        add(fock_flat_diagonal(q, n));
        for (double alpha : grid.alphas) {
          add(fock_relations(q, n, alpha));
          add(fock_gram_closed_form(q, n, alpha));
        }
      }
    }
  }
  if (wants("bergman")) {
    add(norm_spots());
    for (double q : grid.qs) {
      for (int n : grid.ns) {
        add(degree_mass(q, n));
        for (double alpha : grid.alphas) {
          add(monomial_norms(q, n, alpha));
          add(toeplitz_spectra(q, n, alpha));
          add(toeplitz_vanishing(q, n, alpha));
          add(covariant_defining(q, n, alpha));
          add(projection_symbol(q, n, alpha));
        }
      }
    }
  }
  if (wants("spherical")) {
    for (double q : grid.qs) {
      for (int n : grid.ns) {
        add(forward_constant(q, n, grid.M));
        add(density_routes(q, n));
        add(basis_transform(q, n, grid.M));
        add(diagonalization(q, n, grid.M));
      }
    }
  }
  if (wants("plancherel")) {
    for (double q : grid.qs) {
      for (int n : grid.ns) {
        add(parseval(q, n, grid.M));
        add(inversion_roundtrip(q, n, grid.M));
      }
    }
  }
  if (wants("orthogonality")) {
    for (double q : grid.qs) {
      for (int n : grid.ns) {
        add(asc_orthogonality(q, n, grid.M));
        for (double alpha : grid.alphas) {
          add(qhahn_orthogonality(q, n, alpha, grid.M));
          add(spectral_projection(q, n, alpha));
        }
      }
    }
  }
  if (wants("berezin")) {
    for (double q : grid.qs) {
      for (int n : grid.ns) {
        for (double alpha : grid.alphas) {
          add(indicator_transform(q, n, alpha, grid.K));
          add(multiplier_intertwining(q, n, alpha));
          add(laplace_commutation(q, n, alpha, grid.K));
        }
      }
    }
  }
  if (wants("expansion")) {
    for (double q : grid.qs) {
      for (int n : grid.ns) {
        add(remainder_slope(q, n, grid.K));
        add(expansion_partial_sums(q, n, grid.K));
        add(expansion_values(q, n));
      }
    }
  }
  return out;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

/// One report line per check: SUITE CHECK-ID params residual tol PASS|FAIL.
inline std::string format_report_line(const CheckResult& r) {
  std::string line = r.suite;
  line += ' ';
  line += r.id;
  line += ' ';
  line += r.params.empty() ? "-" : r.params;
  line += ' ';
  line += format_double(r.residual);
  line += ' ';
  line += format_double(r.tol);
  line += ' ';
  line += r.pass ? "PASS" : "FAIL";
  return line;
}

/// Two-value detail printed for failing checks.
inline std::string format_failure_detail(const CheckResult& r) {
  std::string line = "  ";
  line += r.id;
  line += ": compared ";
  line += format_double(r.lhs);
  line += " against ";
  line += format_double(r.rhs);
  if (!r.where.empty()) {
    line += " at ";
    line += r.where;
  }
  return line;
}

}  // namespace verify
}  // namespace qball
