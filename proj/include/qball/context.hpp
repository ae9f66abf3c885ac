// SPDX-License-Identifier: MIT
//
// Shared evaluation context: the deformation parameter q, the dimension n,
// and the numerical policy knobs (truncation lengths, tail tolerances).

#ifndef QBALL_CONTEXT_HPP_
#define QBALL_CONTEXT_HPP_

#include <cmath>
#include <stdexcept>
#include <string>

namespace qball {

/// Thrown when a requested truncation provably cannot deliver the
/// advertised accuracy (dropped tail above tolerance, non-monotone
/// remainders, and similar).
class accuracy_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncation policy for infinite products and non-terminating series.
struct TailPolicy {
  double eps_tail = 1e-16;  // stop once the multiplicative tail bound drops below this
  int n_inf = 4096;         // hard cap on the number of factors/terms
};

/// Parameters of one evaluation domain.
///
/// q is the deformation parameter, 0 < q < 1; n is the (complex) dimension.
/// h = log(q^-2) = -2 ln q fixes the scale of the spectral variable rho,
/// which lives on [0, 2 pi / h].  All q-series in this library use the
/// squared base p = q^2.
struct QContext {
  double q;
  int n;
  double h;                 // log(q^-2), always > 0
  int K = 64;               // radial lattice truncation: indices k = 0 .. K-1
  int N_inf = 4096;         // infinite-product factor cap
  double eps_tail = 1e-16;  // tail tolerance for infinite products/series
  int M = 64;               // number of quadrature intervals on [0, 2 pi / h]

  QContext(double q_in, int n_in) : q(q_in), n(n_in), h(0.0) {
    if (!(q_in > 0.0) || !(q_in < 1.0) || !std::isfinite(q_in)) {
      throw std::invalid_argument("q must lie in (0,1)");
    }
    if (n_in < 1) {
      throw std::invalid_argument("n must be a positive integer");
    }
    h = -2.0 * std::log(q_in);
    check();
  }

  /// Re-validates all fields; call after mutating policy members.
  void check() const {
    if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
    if (n < 1) throw std::invalid_argument("n must be a positive integer");
    if (K < 8) throw std::invalid_argument("K must be at least 8");
    if (M < 64 || M % 2 != 0) throw std::invalid_argument("M must be even and at least 64");
    if (!(eps_tail > 0.0)) throw std::invalid_argument("eps_tail must be positive");
    if (N_inf < 1) throw std::invalid_argument("N_inf must be positive");
  }

  double p() const { return q * q; }
  double rho_max() const { return 2.0 * std::acos(-1.0) / h; }
  TailPolicy tail() const { return TailPolicy{eps_tail, N_inf}; }
};

namespace detail {

/// Neumaier-compensated accumulator; fixed ascending call order makes every
/// sum in the library bit-stable.
struct CompensatedSum {
  long double sum = 0.0L;
  long double comp = 0.0L;

  void add(long double x) {
    const long double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  long double value() const { return sum + comp; }
};

}  // namespace detail
}  // namespace qball

#endif  // QBALL_CONTEXT_HPP_
