// SPDX-License-Identifier: MIT

#include <catch2/catch_amalgamated.hpp>

#include "qball/verify.hpp"

using namespace qball;
using verify::VerifyGrid;

TEST_CASE("report lines carry six fields and the verdict", "[verify]") {
  verify::CheckResult r;
  r.suite = "qcore";
  r.id = "poch-splitting";
  r.params = "q=0.6";
  r.residual = 2.5e-16;
  r.tol = 1e-13;
  r.pass = true;
  CHECK(verify::format_report_line(r) ==
        "qcore poch-splitting q=0.6 2.5e-16 1e-13 PASS");

  r.pass = false;
  r.lhs = 1.25;
  r.rhs = 1.5;
  r.where = "a=0.35,m=3";
  CHECK(verify::format_report_line(r) ==
        "qcore poch-splitting q=0.6 2.5e-16 1e-13 FAIL");
  CHECK(verify::format_failure_detail(r) ==
        "  poch-splitting: compared 1.25 against 1.5 at a=0.35,m=3");
}

TEST_CASE("suite selection and the pass predicate", "[verify]") {
  VerifyGrid grid;  // single point q=0.6, n=1, alpha=1
  const auto qcore = verify::run_suite("qcore", grid);
  REQUIRE(qcore.size() == 4);
  CHECK(verify::all_passed(qcore));
  for (const auto& r : qcore) CHECK(r.suite == "qcore");

  // Unknown suite names select nothing; the CLI guards them upstream.
  CHECK(verify::run_suite("nonesuch", grid).empty());

  const auto& names = verify::suite_names();
  CHECK(names.size() == 11);
  CHECK(names.front() == "all");
  for (const auto& name : names) {
    if (name == "all") continue;
    const auto results = verify::run_suite(name, grid);
    CHECK_FALSE(results.empty());
    for (const auto& r : results) CHECK(r.suite == name);
  }
}

TEST_CASE("tolerance override flips marginal checks", "[verify]") {
  VerifyGrid grid;
  grid.tol_override = 1e-30;
  const auto results = verify::run_suite("lattice", grid);
  REQUIRE_FALSE(results.empty());
  CHECK_FALSE(verify::all_passed(results));
  for (const auto& r : results) CHECK(r.tol == 1e-30);
}

TEST_CASE("every check reports within its pinned tolerance", "[verify]") {
  VerifyGrid grid;
  grid.qs = {0.45};
  grid.ns = {2};
  grid.alphas = {1.25};
  grid.M = 1024;  // off-grid parameters, reduced spectral resolution
  const auto results = verify::run_suite("all", grid);
  for (const auto& r : results) {
    INFO(verify::format_report_line(r));
    INFO(verify::format_failure_detail(r));
    CHECK(r.pass);
  }
}
