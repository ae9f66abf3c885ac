// SPDX-License-Identifier: MIT
//
// Unit tests for the truncated operator model of the polynomial algebra.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "qball/fock.hpp"

using namespace qball;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("monomial basis enumeration", "[fock]") {
  QContext ctx(0.5, 2);
  MonomialBasis basis(ctx);
  CHECK(basis.max_degree() == 8);
  CHECK(basis.size() == 45);
  CHECK(basis.exponent(0) == std::vector<int>{0, 0});
  // graded, then lexicographic inside each degree block
  CHECK(basis.exponent(1) == std::vector<int>{0, 1});
  CHECK(basis.exponent(2) == std::vector<int>{1, 0});
  CHECK(basis.index({0, 1}) == 1);
  CHECK(basis.degree(basis.size() - 1) == 8);
  CHECK_FALSE(basis.contains({9, 0}));
  CHECK_THROWS_AS(basis.index({9, 0}), std::domain_error);

  QContext ctx3(0.5, 3);
  MonomialBasis basis3(ctx3);
  CHECK(basis3.max_degree() == 6);
  CHECK(basis3.size() == 84);
}

TEST_CASE("generator matrices", "[fock]") {
  QContext ctx(0.6, 2);
  MonomialBasis basis(ctx);
  const auto c1 = build_creation(1, kInf, basis);
  const auto c2 = build_creation(2, kInf, basis);
  const auto a1 = build_annihilation(1, kInf, basis);

  SECTION("action on the vacuum") {
    CHECK(c2.at(basis.index({0, 1}), 0) == std::complex<double>(1.0));
    CHECK(c1.at(basis.index({1, 0}), 0) == std::complex<double>(1.0));
    for (std::size_t row = 0; row < basis.size(); ++row) {
      CHECK(a1.at(row, 0) == std::complex<double>(0.0));
    }
  }
  SECTION("q-exponent counts the later slots") {
    // i = 1 acting on (0, 1): coefficient q^{m_2} = q.
    CHECK_THAT(c1.at(basis.index({1, 1}), basis.index({0, 1})).real(),
               WithinRel(0.6, 1e-15));
  }
  SECTION("generator matrices move exactly one degree") {
    for (std::size_t col = 0; col < basis.size(); ++col) {
      for (std::size_t row = 0; row < basis.size(); ++row) {
        if (c1.at(row, col) != std::complex<double>(0.0)) {
          CHECK(basis.degree(row) == basis.degree(col) + 1);
        }
        if (a1.at(row, col) != std::complex<double>(0.0)) {
          CHECK(basis.degree(row) == basis.degree(col) - 1);
        }
      }
    }
  }
  SECTION("adjoint coefficient at finite weight") {
    QContext c(0.5, 1);
    MonomialBasis b1(c);
    const double alpha = 1.25;
    const auto a = build_annihilation(1, alpha, b1);
    const double expect =
        (1.0 - 0.25) / (1.0 - std::pow(0.5, 4.0 + 2.0 * alpha));
    CHECK_THAT(a.at(0, 1).real(), WithinRel(expect, 1e-15));
    const auto aflat = build_annihilation(1, kInf, b1);
    CHECK_THAT(aflat.at(0, 1).real(), WithinRel(0.75, 1e-15));
  }
  SECTION("index validation") {
    CHECK_THROWS_AS(build_creation(0, kInf, basis), std::domain_error);
    CHECK_THROWS_AS(build_creation(3, kInf, basis), std::domain_error);
    CHECK_THROWS_AS(build_annihilation(1, 0.0, basis), std::domain_error);
  }
}

TEST_CASE("relation residuals", "[fock]") {
  SECTION("flat case satisfies the defining relations") {
    for (int n : {1, 2, 3}) {
      QContext ctx(0.6, n);
      MonomialBasis basis(ctx);
      const auto report = relation_residuals(kInf, basis);
      for (const auto& [name, residual] : report) {
        INFO("n=" << n << " relation " << name);
        CHECK(residual < 1e-12);
      }
      CHECK(report.count("y-shift") == 1);
      CHECK(report.count("y-spectrum") == 1);
    }
  }
  SECTION("finite weights satisfy the deformed relations") {
    for (int n : {1, 2, 3}) {
      for (double alpha : {0.5, 1.0, 2.0}) {
        QContext ctx(0.6, n);
        MonomialBasis basis(ctx);
        const auto report = relation_residuals(alpha, basis);
        for (const auto& [name, residual] : report) {
          INFO("n=" << n << " alpha=" << alpha << " relation " << name);
          CHECK(residual < 1e-12);
        }
        CHECK(report.count("y-shift") == 0);  // flat-case law only
      }
    }
  }
  SECTION("extreme deformation parameters") {
    for (double q : {0.3, 0.9}) {
      QContext ctx(q, 2);
      MonomialBasis basis(ctx);
      for (double alpha : {0.5, kInf}) {
        const auto report = relation_residuals(alpha, basis);
        for (const auto& [name, residual] : report) {
          INFO("q=" << q << " alpha=" << alpha << " relation " << name);
          CHECK(residual < 1e-12);
        }
      }
    }
  }
  SECTION("basis too small") {
    QContext ctx(0.6, 1);
    MonomialBasis tiny(ctx, 2);
    CHECK_THROWS_AS(relation_residuals(kInf, tiny), std::domain_error);
  }
}

TEST_CASE("y operator spectrum at n=1", "[fock]") {
  QContext ctx(0.7, 1);
  MonomialBasis basis(ctx);
  const auto c = build_creation(1, kInf, basis);
  const auto a = build_annihilation(1, kInf, basis);
  const auto y = FockOperator::identity(basis) - c * a;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    CHECK_THAT(y.at(k, k).real(), WithinAbs(std::pow(0.49, basis.degree(k)), 1e-15));
  }
}

TEST_CASE("normal ordering identity", "[fock]") {
  SECTION("empty word") {
    QContext ctx(0.6, 2);
    MonomialBasis basis(ctx);
    CHECK(normal_order_residual({0, 0}, basis) == 0.0);
  }
  SECTION("single variable") {
    QContext ctx(0.45, 1);
    MonomialBasis basis(ctx);
    for (int m = 1; m <= 4; ++m) {
      CHECK(normal_order_residual({m}, basis) < 1e-13);
    }
  }
  SECTION("closed diagonal for m=(1,0)") {
    // z*_1 z_1 acts as y_2 - q^2 y_1 on the joint spectrum.
    const double p = 0.36;
    const std::vector<double> y = {0.1296, 0.36};
    CHECK_THAT(normal_order_diagonal({1, 0}, y, p),
               WithinRel(y[1] - p * y[0], 1e-15));
    CHECK_THAT(normal_order_diagonal({0, 1}, y, p),
               WithinRel(1.0 - p * y[1], 1e-15));
  }
  SECTION("all admissible words at n=2 and n=3") {
    QContext ctx(0.6, 2);
    MonomialBasis basis(ctx);
    for (int m1 = 0; m1 <= 4; ++m1) {
      for (int m2 = 0; m1 + m2 <= 4; ++m2) {
        INFO("m=(" << m1 << "," << m2 << ")");
        CHECK(normal_order_residual({m1, m2}, basis) < 1e-13);
      }
    }
    QContext ctx3(0.8, 3);
    MonomialBasis basis3(ctx3);
    CHECK(normal_order_residual({1, 1, 1}, basis3) < 1e-13);
    CHECK(normal_order_residual({2, 0, 1}, basis3) < 1e-13);
  }
  SECTION("degree overflow rejected") {
    QContext ctx(0.6, 2);
    MonomialBasis basis(ctx);
    CHECK_THROWS_AS(normal_order_residual({5, 0}, basis), std::domain_error);
    CHECK_THROWS_AS(normal_order_residual({1}, basis), std::invalid_argument);
  }
}

TEST_CASE("gram diagonal", "[fock]") {
  SECTION("flat norms at n=1") {
    QContext ctx(0.6, 1);
    MonomialBasis basis(ctx);
    const auto g = gram_diagonal(kInf, basis);
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
      CHECK_THAT(g[idx], WithinRel(qpoch(0.36, 0.36, basis.degree(idx)), 1e-13));
    }
  }
  SECTION("finite-weight step ratios") {
    QContext ctx(0.6, 2);
    MonomialBasis basis(ctx);
    const double alpha = 1.5;
    const auto g = gram_diagonal(alpha, basis);
    const double p = 0.36;
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
      const auto& m = basis.exponent(idx);
      for (int i = 0; i < 2; ++i) {
        std::vector<int> up = m;
        up[static_cast<std::size_t>(i)] += 1;
        if (!basis.contains(up)) continue;
        const double expect =
            (1.0 - std::pow(p, m[static_cast<std::size_t>(i)] + 1)) /
            (1.0 - std::pow(p, basis.degree(idx) + 1 + ctx.n + alpha));
        CHECK_THAT(g[basis.index(up)] / g[idx], WithinRel(expect, 1e-13));
      }
    }
  }
}
