// SPDX-License-Identifier: MIT
//
// Al-Salam-Chihara and continuous dual q-Hahn polynomial evaluation.
// Forward three-term recurrences are the primary route: they are stable for
// x in [-1,1].  The terminating-series routes are exposed as independent
// cross-checks; their top parameter base^{-m} makes the raw terms grow like
// base^{-m(m-1)/2}, so callers must keep that conditioning factor moderate.

#ifndef QBALL_ORTHOPOLY_HPP_
#define QBALL_ORTHOPOLY_HPP_

#include <cmath>
#include <complex>
#include <stdexcept>

#include "qball/qseries.hpp"

namespace qball {

/// Q_m(x; a, b | base) by the recurrence
/// 2x Q_m = Q_{m+1} + (a+b) base^m Q_m + (1 - base^m)(1 - ab base^{m-1}) Q_{m-1},
/// Q_{-1} = 0, Q_0 = 1.
inline double alsalam_chihara(int m, double x, double a, double b, double base) {
  detail::require_base(base);
  if (m < 0) throw std::domain_error("alsalam_chihara: negative degree");
  const long double xl = x, al = a, bl = b, pl = base;
  long double q_prev = 0.0L;  // Q_{-1}
  long double q_cur = 1.0L;   // Q_0
  long double pj = 1.0L;      // base^j
  long double pjm1 = 0.0L;    // base^{j-1}, the j = 0 step never reads it
  for (int j = 0; j < m; ++j) {
    const long double cj = (j == 0) ? 0.0L : (1.0L - pj) * (1.0L - al * bl * pjm1);
    const long double q_next = (2.0L * xl - (al + bl) * pj) * q_cur - cj * q_prev;
    q_prev = q_cur;
    q_cur = q_next;
    pjm1 = pj;
    pj *= pl;
  }
  return static_cast<double>(q_cur);
}

/// Q_m via the terminating series
/// a^{-m} (ab; base)_m 3phi2(base^{-m}, a u, a conj(u); ab, 0; base, base),
/// u = x + i sqrt(1-x^2).  Cross-check route only.
inline double alsalam_chihara_series(int m, double x, double a, double b, double base,
                                     const TailPolicy& tail = {}) {
  detail::require_base(base);
  if (m < 0) throw std::domain_error("alsalam_chihara: negative degree");
  if (std::fabs(x) > 1.0) throw std::domain_error("alsalam_chihara_series: |x| > 1");
  const std::complex<double> u(x, std::sqrt(1.0 - x * x));
  const std::complex<double> s =
      phi32(std::pow(base, -m), a * u, a * std::conj(u), a * b, 0.0, base, base, tail);
  const double scale = qpoch(a * b, base, m) * std::pow(a, -m);
  return scale * s.real();
}

/// Continuous dual q-Hahn polynomial p_m(x; a, b, c | base), normalized so
/// that p_m matches a^{-m} (ab; base)_m (ac; base)_m times the terminating
/// 3phi2 with top parameter base^{-m}.  Evaluated by the three-term
/// recurrence (stable; the series route cancels catastrophically when a is
/// small).  Setting c = 0 recovers alsalam_chihara.
inline double cont_dual_qhahn(int m, double x, double a, double b, double c, double base) {
  detail::require_base(base);
  if (m < 0) throw std::domain_error("cont_dual_qhahn: negative degree");
  const long double xl = x, al = a, bl = b, cl = c, pl = base;
  long double r_prev = 0.0L;  // p_{-1}
  long double r_cur = 1.0L;   // p_0
  long double pj = 1.0L;      // base^j
  long double pjm1 = 0.0L;    // base^{j-1}
  for (int j = 0; j < m; ++j) {
    const long double diag =
        2.0L * xl - (al + bl + cl) * pj -
        ((j == 0) ? -al * bl * cl  // base^{-1}(1 - 1 - base) collapses to +abc
                  : al * bl * cl * pjm1 * (1.0L - pj - pj * pl));
    const long double off =
        (j == 0) ? 0.0L
                 : (1.0L - pj) * (1.0L - al * bl * pjm1) * (1.0L - al * cl * pjm1) *
                       (1.0L - bl * cl * pjm1);
    const long double r_next = diag * r_cur - off * r_prev;
    r_prev = r_cur;
    r_cur = r_next;
    pjm1 = pj;
    pj *= pl;
  }
  return static_cast<double>(r_cur);
}

/// p_m via the terminating 3phi2.  Cross-check route; only meaningful when
/// a is not small and base^{-m(m-1)/2} stays moderate.
inline double cont_dual_qhahn_series(int m, double x, double a, double b, double c, double base,
                                     const TailPolicy& tail = {}) {
  detail::require_base(base);
  if (m < 0) throw std::domain_error("cont_dual_qhahn: negative degree");
  if (std::fabs(x) > 1.0) throw std::domain_error("cont_dual_qhahn_series: |x| > 1");
  const std::complex<double> u(x, std::sqrt(1.0 - x * x));
  const std::complex<double> s = phi32(std::pow(base, -m), a * u, a * std::conj(u), a * b,
                                       a * c, base, base, tail);
  const double scale = qpoch(a * b, base, m) * qpoch(a * c, base, m) * std::pow(a, -m);
  return scale * s.real();
}

}  // namespace qball

#endif  // QBALL_ORTHOPOLY_HPP_
