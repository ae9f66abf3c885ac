// SPDX-License-Identifier: MIT
//
// Scalar q-series kernel: q-Pochhammer symbols (finite, infinite, real
// exponent), the q-Gamma function, and the terminating/convergent 3phi2
// basic hypergeometric sum.  Everything operates with the base p in (0,1);
// callers in this library pass p = q^2.

#ifndef QBALL_QSERIES_HPP_
#define QBALL_QSERIES_HPP_

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qball/context.hpp"

namespace qball {

/// Product factors closer to zero than this are treated as exactly zero.
/// Legitimate factors in this library's parameter domain stay above ~1e-4,
/// so the cutoff only fires on identities of the form 1 - p^0.
inline constexpr double kDegenerateTol = 1e-12;

namespace detail {

inline void require_base(double base) {
  if (!(base > 0.0) || !(base < 1.0) || !std::isfinite(base)) {
    throw std::domain_error("q-series base must lie in (0,1)");
  }
}

template <typename T>
bool finite_value(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}

// Widens double -> long double and complex<double> -> complex<long double>.
template <typename T>
struct widen {
  using type = long double;
};
template <>
struct widen<std::complex<double>> {
  using type = std::complex<long double>;
};

template <typename T>
T narrow(const typename widen<T>::type& v) {
  if constexpr (std::is_same_v<T, double>) {
    return static_cast<double>(v);
  } else {
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  }
}

template <typename T>
T qpoch_finite(const T& a, double base, int count) {
  require_base(base);
  if (!finite_value(a)) throw std::domain_error("qpoch: non-finite argument");
  if (count < 0) throw std::domain_error("qpoch: negative count");
  using W = typename widen<T>::type;
  W prod = 1.0L;
  W ap = W(a);
  for (int j = 0; j < count; ++j) {
    const W factor = W(1.0L) - ap;
    if (std::abs(factor) <= kDegenerateTol) return T{};
    prod *= factor;
    ap *= base;
  }
  return narrow<T>(prod);
}

template <typename T>
T qpoch_infinite(const T& a, double base, const TailPolicy& tail) {
  require_base(base);
  if (!finite_value(a)) throw std::domain_error("qpoch: non-finite argument");
  using W = typename widen<T>::type;
  W prod = 1.0L;
  W ap = W(a);
  const long double inv = 1.0L / (1.0L - static_cast<long double>(base));
  for (int j = 0; j < tail.n_inf; ++j) {
    if (static_cast<double>(std::abs(ap) * inv) < tail.eps_tail) break;
    const W factor = W(1.0L) - ap;
    if (std::abs(factor) <= kDegenerateTol) return T{};
    prod *= factor;
    ap *= base;
  }
  return narrow<T>(prod);
}

}  // namespace detail

/// (a; base)_count, the finite q-Pochhammer product.
inline double qpoch(double a, double base, int count) {
  return detail::qpoch_finite(a, base, count);
}
inline std::complex<double> qpoch(std::complex<double> a, double base, int count) {
  return detail::qpoch_finite(a, base, count);
}

/// (a; base)_infinity, truncated at the first N with |a| base^N / (1-base)
/// below eps_tail (so the neglected multiplicative tail is below tolerance),
/// capped at n_inf factors.
inline double qpoch_inf(double a, double base, const TailPolicy& tail = {}) {
  return detail::qpoch_infinite(a, base, tail);
}
inline std::complex<double> qpoch_inf(std::complex<double> a, double base,
                                      const TailPolicy& tail = {}) {
  return detail::qpoch_infinite(a, base, tail);
}

/// |(r e^{i theta}; base)_infinity|^2 evaluated in purely real arithmetic via
/// |1 - r e^{i theta} base^j|^2 = 1 - 2 r base^j cos(theta) + r^2 base^{2j}.
/// Used for spectral densities: the factor at r base^j = 1, theta = 0 is an
/// exact 0, so endpoint zeros come out exact.
inline double qpoch_inf_abs2(double r, double theta, double base, const TailPolicy& tail = {}) {
  detail::require_base(base);
  if (!std::isfinite(r) || !std::isfinite(theta)) {
    throw std::domain_error("qpoch_inf_abs2: non-finite argument");
  }
  const long double c = std::cos(static_cast<long double>(theta));
  long double rp = r;
  long double prod = 1.0L;
  const long double inv = 1.0L / (1.0L - static_cast<long double>(base));
  for (int j = 0; j < tail.n_inf; ++j) {
    if (static_cast<double>(std::fabs(rp) * inv) < 0.5 * tail.eps_tail) break;
    prod *= 1.0L - 2.0L * rp * c + rp * rp;
    rp *= base;
  }
  return static_cast<double>(prod);
}

/// (a; base)_gamma for real exponent gamma, defined as the ratio
/// (a; base)_inf / (a base^gamma; base)_inf.
inline double qpoch_real(double a, double base, double gamma, const TailPolicy& tail = {}) {
  detail::require_base(base);
  const double shifted = a * std::pow(base, gamma);
  const double denom = qpoch_inf(shifted, base, tail);
  if (denom == 0.0) throw std::domain_error("qpoch_real: shifted product vanishes");
  return qpoch_inf(a, base, tail) / denom;
}

/// q-Gamma function with base in (0,1):
/// qgamma(x) = (base; base)_inf / (base^x; base)_inf * (1-base)^{1-x}.
/// Poles at x = 0, -1, -2, ... raise a domain error.
inline double qgamma(double x, double base, const TailPolicy& tail = {}) {
  detail::require_base(base);
  if (!std::isfinite(x)) throw std::domain_error("qgamma: non-finite argument");
  if (x < 0.5 && std::fabs(x - std::round(x)) < 1e-12) {
    throw std::domain_error("qgamma: pole at nonpositive integer");
  }
  const long double lbase = base;
  const long double px = std::exp(static_cast<long double>(x) * std::log(lbase));
  const double num = qpoch_inf(base, base, tail);
  const double den = qpoch_inf(static_cast<double>(px), base, tail);
  if (den == 0.0) throw std::domain_error("qgamma: pole");
  const long double pw =
      std::exp((1.0L - static_cast<long double>(x)) * std::log1p(-lbase));
  return static_cast<double>(num / static_cast<long double>(den) * pw);
}

/// Complex-argument q-Gamma, needed for the Harish-Chandra style quotient
/// checks; base^x and (1-base)^{1-x} use principal logarithms.
inline std::complex<double> qgamma(std::complex<double> x, double base,
                                   const TailPolicy& tail = {}) {
  detail::require_base(base);
  if (!detail::finite_value(x)) throw std::domain_error("qgamma: non-finite argument");
  if (std::fabs(x.imag()) < 1e-14 && x.real() < 0.5 &&
      std::fabs(x.real() - std::round(x.real())) < 1e-12) {
    throw std::domain_error("qgamma: pole at nonpositive integer");
  }
  const std::complex<double> px = std::exp(x * std::log(base));
  const std::complex<double> den = qpoch_inf(px, base, tail);
  if (std::abs(den) == 0.0) throw std::domain_error("qgamma: pole");
  const std::complex<double> pw =
      std::exp((std::complex<double>(1.0) - x) * std::log1p(-base));
  return qpoch_inf(base, base, tail) / den * pw;
}

namespace detail {

// Terms of 3phi2(a1,a2,a3; b1,b2; base, z) in ascending order.  A numerator
// factor within kDegenerateTol of zero terminates the series exactly; a
// vanishing denominator factor before termination is a domain error.
inline std::vector<std::complex<long double>> phi32_terms(
    std::complex<double> a1, std::complex<double> a2, std::complex<double> a3,
    std::complex<double> b1, std::complex<double> b2, double base, std::complex<double> z,
    const TailPolicy& tail) {
  require_base(base);
  for (const auto& v : {a1, a2, a3, b1, b2, z}) {
    if (!finite_value(v)) throw std::domain_error("phi32: non-finite parameter");
  }
  using C = std::complex<long double>;
  const C zl(z.real(), z.imag());
  C pl = 1.0L;  // base^l
  C t = 1.0L;
  std::vector<C> terms;
  terms.reserve(32);
  long double max_abs = 1.0L;
  for (int l = 0; l < tail.n_inf; ++l) {
    terms.push_back(t);
    max_abs = std::max(max_abs, std::abs(t));
    C num = 1.0L;
    bool terminated = false;
    for (const auto& a : {a1, a2, a3}) {
      const C factor = C(1.0L) - C(a.real(), a.imag()) * pl;
      if (std::abs(factor) <= kDegenerateTol) {
        terminated = true;
        break;
      }
      num *= factor;
    }
    if (terminated) return terms;
    C den = C(1.0L) - C(base) * pl;  // the (base; base)_{l+1} increment
    for (const auto& b : {b1, b2}) {
      if (b == std::complex<double>(0.0)) continue;  // (0; base)_l = 1
      const C factor = C(1.0L) - C(b.real(), b.imag()) * pl;
      if (std::abs(factor) <= kDegenerateTol) {
        throw std::domain_error("phi32: denominator factor vanishes before termination");
      }
      den *= factor;
    }
    t *= num / den * zl;
    if (std::abs(t) > 1e30L) throw std::domain_error("phi32: series diverges");
    if (static_cast<double>(std::abs(t)) < tail.eps_tail * static_cast<double>(max_abs) &&
        std::abs(zl) < 1.0L) {
      terms.push_back(t);
      return terms;
    }
    pl *= base;
  }
  throw std::domain_error("phi32: series did not terminate or converge within N_inf terms");
}

}  // namespace detail

/// Terminating or convergent 3phi2(a1, a2, a3; b1, b2; base, z).  b2 = 0 is
/// allowed (the spherical-function series carries a vanishing lower
/// parameter, which makes every denominator factor equal to 1).
inline std::complex<double> phi32(std::complex<double> a1, std::complex<double> a2,
                                  std::complex<double> a3, std::complex<double> b1,
                                  std::complex<double> b2, double base, std::complex<double> z,
                                  const TailPolicy& tail = {}) {
  const auto terms = detail::phi32_terms(a1, a2, a3, b1, b2, base, z, tail);
  detail::CompensatedSum re, im;
  for (const auto& t : terms) {
    re.add(t.real());
    im.add(t.imag());
  }
  return {static_cast<double>(re.value()), static_cast<double>(im.value())};
}

}  // namespace qball

#endif  // QBALL_QSERIES_HPP_
