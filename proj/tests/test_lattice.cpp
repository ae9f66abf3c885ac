// SPDX-License-Identifier: MIT
//
// Unit tests for the lattice function spaces and integrals.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qball/lattice.hpp"

using namespace qball;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Jackson integral", "[lattice]") {
  SECTION("constant function integrates to 1") {
    std::vector<double> ones(256, 1.0);
    CHECK_THAT(jackson_integral(ones, 0.25), WithinRel(1.0, 1e-14));
  }
  SECTION("identity integrand") {
    // (1-p) sum p^{2l} = 1/(1+p) = 0.8 at p = 0.25.
    std::vector<double> t(128);
    for (std::size_t l = 0; l < t.size(); ++l) t[l] = std::pow(0.25, l);
    CHECK_THAT(jackson_integral(t, 0.25), WithinRel(0.8, 1e-14));
  }
  SECTION("beta-type integrand matches the q-Gamma quotient, frozen") {
    // integral of t^{1.5} (q^2 t; q^2)_3 with q = 0.6.
    const double p = 0.36;
    std::vector<double> s(128);
    for (std::size_t l = 0; l < s.size(); ++l) {
      const double t = std::pow(p, l);
      s[l] = std::pow(t, 1.5) * qpoch(p * t, p, 3);
    }
    CHECK_THAT(jackson_integral(s, p), WithinRel(0.384408296133646256063, 1e-14));
    const double viaGamma = qgamma(2.5, p) * qgamma(4.0, p) / qgamma(6.5, p);
    CHECK_THAT(jackson_integral(s, p), WithinRel(viaGamma, 1e-13));
  }
  SECTION("non-finite samples rejected") {
    std::vector<double> bad = {1.0, std::nan("")};
    CHECK_THROWS_AS(jackson_integral(bad, 0.25), std::domain_error);
  }
}

TEST_CASE("lattice weights", "[lattice]") {
  QContext ctx(0.5, 1);
  SECTION("n=1 values") {
    CHECK_THAT(lattice_weight(ctx, 0), WithinRel(0.75, 1e-15));
    CHECK_THAT(lattice_weight(ctx, 1), WithinRel(3.0, 1e-15));
  }
  SECTION("positivity across the grid") {
    for (int n : {1, 2, 3}) {
      for (double q : {0.3, 0.6, 0.9}) {
        QContext c(q, n);
        for (int k = 0; k < c.K; ++k) CHECK(lattice_weight(c, k) > 0.0);
      }
    }
  }
}

TEST_CASE("invariant integral, radial", "[lattice]") {
  SECTION("basis values at n=1, q=0.5") {
    QContext ctx(0.5, 1);
    CHECK_THAT(invariant_integral_radial(RadialFunction::basis(ctx, 0)), WithinRel(0.75, 1e-15));
  }
  SECTION("f1 at n=2, q=0.5") {
    QContext ctx(0.5, 2);
    CHECK_THAT(invariant_integral_radial(RadialFunction::basis(ctx, 1)),
               WithinRel(14.0625, 1e-14));
  }
  SECTION("zero function") {
    QContext ctx(0.5, 2);
    CHECK(invariant_integral_radial(RadialFunction(ctx)) == 0.0);
  }
  SECTION("agrees with the Jackson-integral route") {
    // (1-q^{2n})/(1-q^2) * integral of f(y) y^{-n-1} (y q^2; q^2)_{n-1} d_{q^2} y.
    for (int n : {1, 2, 3}) {
      QContext ctx(0.6, n);
      const double p = ctx.p();
      RadialFunction f(ctx);
      f[0] = 0.7;
      f[2] = -1.3;
      f[5] = 0.25;
      std::vector<double> samples(ctx.K);
      for (int l = 0; l < ctx.K; ++l) {
        const double y = std::pow(p, l);
        samples[l] = f[l] * std::pow(y, -ctx.n - 1) * qpoch(y * p, p, ctx.n - 1);
      }
      const double viaJackson =
          (1.0 - std::pow(p, ctx.n)) / (1.0 - p) * jackson_integral(samples, p);
      CHECK_THAT(invariant_integral_radial(f), WithinRel(viaJackson, 1e-13));
    }
  }
}

TEST_CASE("L2 inner product", "[lattice]") {
  QContext ctx(0.5, 1);
  SECTION("basis norms and orthogonality") {
    const auto f0 = RadialFunction::basis(ctx, 0);
    const auto f1 = RadialFunction::basis(ctx, 1);
    CHECK_THAT(l2_inner_radial(f0, f0).real(), WithinRel(0.75, 1e-15));
    CHECK(l2_inner_radial(f0, f1) == std::complex<double>(0.0));
    CHECK_THAT(l2_inner_radial(f1, f1).real(), WithinRel(lattice_weight(ctx, 1), 1e-15));
  }
  SECTION("context mismatch rejected") {
    QContext other(0.6, 1);
    CHECK_THROWS_AS(l2_inner_radial(RadialFunction(ctx), RadialFunction(other)),
                    std::domain_error);
  }
}

TEST_CASE("multi-radial functions and simplex integrals", "[lattice]") {
  SECTION("indicator values at n=2, q=0.5") {
    QContext ctx(0.5, 2);
    MultiRadialFunction f(ctx);
    f.set({0, 0}, 1.0);
    CHECK_THAT(invariant_integral_multi(f), WithinRel(qpoch(0.25, 0.25, 2), 1e-14));
    MultiRadialFunction g(ctx);
    g.set({1, 0}, 1.0);
    CHECK_THAT(invariant_integral_multi(g), WithinRel(11.25, 1e-13));
    MultiRadialFunction h(ctx);
    h.set({1, 1}, 1.0);
    CHECK_THAT(invariant_integral_multi(h), WithinRel(2.8125, 1e-13));
  }
  SECTION("key validation") {
    QContext ctx(0.5, 2);
    MultiRadialFunction f(ctx);
    CHECK_THROWS_AS(f.set({0, 1}, 1.0), std::domain_error);   // violates ordering
    CHECK_THROWS_AS(f.set({0}, 1.0), std::domain_error);      // arity
    CHECK_THROWS_AS(f.set({-1, -1}, 1.0), std::domain_error); // negative
    CHECK_THROWS_AS(f.set({64, 0}, 1.0), std::domain_error);  // beyond K
  }
  SECTION("embedding consistency with the radial integral") {
    for (int n : {1, 2, 3}) {
      QContext ctx(0.5, n);
      ctx.K = 40;
      RadialFunction g(ctx);
      g[0] = 1.0;
      g[1] = -2.0;
      g[3] = 0.5;
      g[7] = 4.0;
      const double multi = invariant_integral_multi(MultiRadialFunction::embed(g));
      CHECK_THAT(multi, WithinRel(invariant_integral_radial(g), 1e-12));
    }
  }
  SECTION("per-shell weights sum to the radial weight") {
    // n=2, q=0.5, shell k1=1: 11.25 + 2.8125 = w_1.
    QContext ctx(0.5, 2);
    CHECK_THAT(lattice_weight(ctx, 1), WithinRel(14.0625, 1e-14));
  }
}

TEST_CASE("weighted integral", "[lattice]") {
  SECTION("f0 mass") {
    for (int n : {1, 2, 3}) {
      for (double q : {0.3, 0.6, 0.9}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
          QContext ctx(q, n);
          MultiRadialFunction f(ctx);
          f.set(std::vector<int>(static_cast<std::size_t>(n), 0), 1.0);
          const double expected = qpoch(std::pow(ctx.p(), alpha + 1.0), ctx.p(), n);
          CHECK_THAT(weighted_integral(f, alpha), WithinRel(expected, 1e-14));
        }
      }
    }
  }
  SECTION("normalization: total mass 1") {
    for (int n : {1, 2, 3}) {
      for (double q : {0.3, 0.6, 0.9}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
          QContext ctx(q, n);
          ctx.K = 128;  // keeps the dropped tail below 1e-12 even at q = 0.9
          MultiRadialFunction ones(ctx);
          for_each_simplex_point(n, ctx.K,
                                 [&](const std::vector<int>& k) { ones.set(k, 1.0); });
          CHECK_THAT(weighted_integral(ones, alpha), WithinRel(1.0, 1e-10));
        }
      }
    }
  }
  SECTION("negative alpha rejected") {
    QContext ctx(0.5, 1);
    MultiRadialFunction f(ctx);
    f.set({0}, 1.0);
    CHECK_THROWS_AS(weighted_integral(f, -0.5), std::domain_error);
  }
}

TEST_CASE("geometric simplex sum closed form", "[lattice]") {
  // sum over a <= l_n <= ... <= l_1 <= b of q^{2 l_1} ... q^{2 l_n}
  //   = q^{2 a n} (q^{2(b-a)+2}; q^2)_n / (q^2; q^2)_n.
  const double p = 0.36;
  for (int n = 1; n <= 4; ++n) {
    for (int a = 0; a <= 6; ++a) {
      for (int b = a; b <= 6; ++b) {
        // enumerate l in P(n) shifted into [a, b]
        double sum = 0.0;
        for_each_simplex_point(n, b - a + 1, [&](const std::vector<int>& l) {
          double term = 1.0;
          for (int li : l) term *= std::pow(p, li + a);
          sum += term;
        });
        const double closed = std::pow(p, static_cast<double>(a) * n) *
                              qpoch(std::pow(p, b - a + 1), p, n) / qpoch(p, p, n);
        CHECK_THAT(sum, WithinRel(closed, 1e-13));
      }
    }
  }
}
