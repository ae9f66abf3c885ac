// SPDX-License-Identifier: MIT
//
// Unit tests for the orthogonal-polynomial evaluators.  Frozen values come
// from 40-digit summation of the terminating series.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qball/orthopoly.hpp"

using namespace qball;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Al-Salam-Chihara recurrence basics", "[orthopoly]") {
  SECTION("degree 0 and 1") {
    CHECK(alsalam_chihara(0, 0.3, 0.5, 0.7, 0.49) == 1.0);
    CHECK_THAT(alsalam_chihara(1, 0.3, 0.5, 0.7, 0.49), WithinRel(2 * 0.3 - 1.2, 1e-15));
  }
  SECTION("parameter symmetry") {
    for (int m : {2, 5, 9}) {
      CHECK_THAT(alsalam_chihara(m, -0.4, 0.8, 0.15, 0.6),
                 WithinRel(alsalam_chihara(m, -0.4, 0.15, 0.8, 0.6), 1e-13));
    }
  }
  SECTION("frozen values") {
    CHECK_THAT(alsalam_chihara(5, 0.3, 0.7, 0.2, 0.5), WithinRel(0.197667744140625, 1e-13));
    CHECK_THAT(alsalam_chihara(12, -0.8, 0.9, 0.9, 0.81),
               WithinRel(3144.5468668069151647, 1e-13));
  }
}

TEST_CASE("Al-Salam-Chihara series route agrees with recurrence", "[orthopoly]") {
  // The raw series terms reach base^{-m(m-1)/2} a^{-m} times the sum, so the
  // comparison is only meaningful while that conditioning factor is moderate;
  // the degree caps below keep it under ~1e5 per base.
  const struct {
    double base;
    int m_cap;
    double tol;
  } sweeps[] = {
      {0.95, 12, 1e-10}, {0.81, 7, 1e-11}, {0.50, 5, 1e-11}, {0.36, 4, 1e-11}, {0.09, 3, 1e-11}};
  for (const auto& s : sweeps) {
    for (int m = 0; m <= s.m_cap; ++m) {
      for (double x : {-0.9, -0.5, 0.0, 0.4, 0.8}) {
        const double rec = alsalam_chihara(m, x, 0.9, 0.9, s.base);
        const double ser = alsalam_chihara_series(m, x, 0.9, 0.9, s.base);
        CHECK_THAT(ser, WithinRel(rec, s.tol));
      }
    }
  }
}

TEST_CASE("continuous dual q-Hahn evaluation", "[orthopoly]") {
  SECTION("degree 0 and the linear value") {
    CHECK(cont_dual_qhahn(0, 0.5, 0.3, 0.2, 0.1, 0.36) == 1.0);
    const double a = 0.3, b = 0.2, c = 0.1;
    CHECK_THAT(cont_dual_qhahn(1, 0.5, a, b, c, 0.36),
               WithinRel(2 * 0.5 - (a + b + c) + a * b * c, 1e-14));
  }
  SECTION("frozen values") {
    CHECK_THAT(cont_dual_qhahn(4, 0.5, 0.3, 0.2, 0.1, 0.36),
               WithinRel(-0.3181326108732739137014, 1e-13));
    // Parameters of the spectral-symbol family at n=1, alpha=0.5, q=0.6.
    CHECK_THAT(cont_dual_qhahn(6, std::cos(0.7), 0.1296, 0.6, 0.6, 0.36),
               WithinRel(-0.02562990537142279687827, 1e-12));
  }
  SECTION("c = 0 degenerates to Al-Salam-Chihara") {
    for (int m = 0; m <= 10; ++m) {
      CHECK_THAT(cont_dual_qhahn(m, 0.25, 0.6, 0.35, 0.0, 0.49),
                 WithinRel(alsalam_chihara(m, 0.25, 0.6, 0.35, 0.49), 1e-13));
    }
  }
  SECTION("b and c interchangeable") {
    for (int m : {1, 3, 6}) {
      CHECK_THAT(cont_dual_qhahn(m, -0.15, 0.5, 0.7, 0.2, 0.6),
                 WithinRel(cont_dual_qhahn(m, -0.15, 0.5, 0.2, 0.7, 0.6), 1e-13));
    }
  }
  SECTION("series route agrees at benign parameters") {
    for (int m = 0; m <= 4; ++m) {
      const double rec = cont_dual_qhahn(m, 0.5, 0.3, 0.2, 0.1, 0.36);
      const double ser = cont_dual_qhahn_series(m, 0.5, 0.3, 0.2, 0.1, 0.36);
      CHECK_THAT(ser, WithinAbs(rec, 1e-9 * (1.0 + std::fabs(rec))));
    }
  }
}
