// SPDX-License-Identifier: MIT
//
// Command-line surface of the library: run verification suites over a
// parameter grid, emit tables of special values, and apply transforms to
// radial functions supplied as JSON records.
//
// Exit codes: 0 success, 1 identity or accuracy failure, 2 usage error.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qball/qball.hpp"

namespace {

struct CommonOpts {
  double q = 0.0;
  int n = 1;
  double alpha = 1.0;
  int K = 0;
  int M = 0;
  int kmax = 10;
  int rho_nodes = 11;
  double tol = 0.0;
  std::string suite = "all";
  std::string kind;
  std::string format;
  std::string input;
  std::string out;
  // presence trackers; a grid dimension collapses only when the flag is given
  CLI::Option* q_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* K_opt = nullptr;
  CLI::Option* M_opt = nullptr;
};

void deliver(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    qball::write_text_file(out_path, text);
  }
}

std::vector<double> rho_grid(const qball::QContext& ctx, int nodes) {
  std::vector<double> rhos;
  if (nodes <= 0) return rhos;
  rhos.reserve(static_cast<std::size_t>(nodes));
  if (nodes == 1) {
    rhos.push_back(0.0);
    return rhos;
  }
  for (int j = 0; j < nodes; ++j) {
    rhos.push_back(ctx.rho_max() * j / (nodes - 1));
  }
  return rhos;
}

int run_verify(const CommonOpts& o) {
  qball::verify::VerifyGrid grid;
  grid.qs = {0.3, 0.6, 0.9};
  grid.ns = {1, 2, 3};
  grid.alphas = {0.5, 1.0, 2.0};
  if (o.q_opt->count() > 0) {
    (void)qball::QContext(o.q, 1);  // validates q before the grid collapses
    grid.qs = {o.q};
  }
  if (o.n_opt->count() > 0) {
    (void)qball::QContext(0.5, o.n);
    grid.ns = {o.n};
  }
  if (o.alpha_opt->count() > 0) {
    (void)qball::WeightParam(qball::QContext(0.5, 1), o.alpha);
    grid.alphas = {o.alpha};
  }
  if (o.K_opt->count() > 0) grid.K = o.K;
  if (o.M_opt->count() > 0) grid.M = o.M;
  grid.tol_override = o.tol;
  {
    qball::QContext probe(grid.qs.front(), grid.ns.front());
    probe.K = grid.K;
    probe.M = grid.M;
    probe.check();
  }

  const auto results = qball::verify::run_suite(o.suite, grid);
  std::string report;
  for (const auto& r : results) {
    report += qball::verify::format_report_line(r);
    report += '\n';
    if (!r.pass) {
      report += qball::verify::format_failure_detail(r);
      report += '\n';
    }
  }
  std::fputs(report.c_str(), stdout);
  if (!o.out.empty()) qball::write_text_file(o.out, report);
  return qball::verify::all_passed(results) ? 0 : 1;
}

// One table row: CSV cells and the matching JSON object, built side by side
// so both formats share the value formatting.
struct TableBuilder {
  std::string csv;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();

  explicit TableBuilder(const std::string& header) : csv(header + "\n") {}

  void row(const nlohmann::ordered_json& record) {
    std::string line;
    for (const auto& [key, value] : record.items()) {
      (void)key;
      if (!line.empty()) line += ',';
      if (value.is_number_integer()) {
        line += std::to_string(value.get<long long>());
      } else {
        line += qball::format_double(value.get<double>());
      }
    }
    csv += line;
    csv += '\n';
    rows.push_back(record);
  }

  std::string text(const std::string& format) const {
    if (format == "json") return rows.dump(2) + "\n";
    return csv;
  }
};

int run_table(const CommonOpts& o) {
  qball::QContext ctx(o.q, o.n);
  if (o.K_opt->count() > 0) ctx.K = o.K;
  if (o.M_opt->count() > 0) ctx.M = o.M;
  ctx.check();
  const auto rhos = rho_grid(ctx, o.rho_nodes);

  if (o.kind == "phi") {
    TableBuilder t("j,rho,k,phi");
    for (std::size_t j = 0; j < rhos.size(); ++j) {
      for (int k = 0; k <= o.kmax; ++k) {
        t.row({{"j", static_cast<int>(j)},
               {"rho", rhos[j]},
               {"k", k},
               {"phi", qball::spherical_phi(rhos[j], k, ctx)}});
      }
    }
    deliver(t.text(o.format), o.out);
    return 0;
  }
  if (o.kind == "lambda") {
    TableBuilder t("j,rho,lambda");
    for (std::size_t j = 0; j < rhos.size(); ++j) {
      t.row({{"j", static_cast<int>(j)},
             {"rho", rhos[j]},
             {"lambda", qball::lambda_eig(rhos[j], ctx)}});
    }
    deliver(t.text(o.format), o.out);
    return 0;
  }
  if (o.kind == "b-symbol") {
    const qball::WeightParam w(ctx, o.alpha);
    TableBuilder t("j,rho,b");
    for (std::size_t j = 0; j < rhos.size(); ++j) {
      t.row({{"j", static_cast<int>(j)},
             {"rho", rhos[j]},
             {"b", qball::symbol_b(rhos[j], w)}});
    }
    deliver(t.text(o.format), o.out);
    return 0;
  }
  if (o.kind == "norms") {
    const qball::WeightParam w(ctx, o.alpha);
    const qball::MonomialBasis basis(ctx, std::max(o.kmax, 1));
    std::string header;
    for (int i = 1; i <= ctx.n; ++i) header += "m" + std::to_string(i) + ",";
    TableBuilder t(header + "norm");
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
      if (basis.degree(idx) > o.kmax) continue;
      nlohmann::ordered_json record;
      const auto& m = basis.exponent(idx);
      for (int i = 0; i < ctx.n; ++i) {
        record["m" + std::to_string(i + 1)] = m[static_cast<std::size_t>(i)];
      }
      record["norm"] = qball::monomial_norm(m, w);
      t.row(record);
    }
    deliver(t.text(o.format), o.out);
    return 0;
  }
  if (o.kind == "weights") {
    TableBuilder t("k,weight");
    for (int k = 0; k <= o.kmax; ++k) {
      t.row({{"k", k}, {"weight", qball::lattice_weight(ctx, k)}});
    }
    deliver(t.text(o.format), o.out);
    return 0;
  }
  // berezin-f0
  qball::QContext wide = ctx;
  wide.K = std::max(ctx.K, o.kmax + 2);
  wide.check();
  const qball::WeightParam ww(wide, o.alpha);
  const qball::RadialFunction image =
      qball::berezin_radial(qball::RadialFunction::basis(wide, 0), ww);
  TableBuilder t("k,value");
  for (int k = 0; k <= o.kmax; ++k) {
    t.row({{"k", k}, {"value", image[k]}});
  }
  deliver(t.text(o.format), o.out);
  return 0;
}

void require_match(const char* flag, double given, double recorded, bool present) {
  if (present && given != recorded) {
    std::ostringstream msg;
    msg << "input record has " << (flag + 2) << " = " << qball::format_double(recorded)
        << "; " << flag << " " << qball::format_double(given) << " disagrees";
    throw std::domain_error(msg.str());
  }
}

int run_transform(const CommonOpts& o) {
  const auto record = qball::parse_record_text(qball::read_text_file(o.input));

  if (o.kind == "inverse") {
    qball::SpectralFunction F = qball::spectral_from_json(record);
    require_match("--q", o.q, F.ctx.q, o.q_opt->count() > 0);
    require_match("--n", o.n, F.ctx.n, o.n_opt->count() > 0);
    const int Kout = o.K_opt->count() > 0 ? o.K : F.ctx.K;
    const qball::RadialFunction f = qball::inverse(F, Kout);
    deliver(o.format == "csv" ? qball::to_csv(f) : qball::to_json(f).dump(2) + "\n",
            o.out);
    return 0;
  }

  qball::RadialFunction f = qball::radial_from_json(record);
  require_match("--q", o.q, f.ctx.q, o.q_opt->count() > 0);
  require_match("--n", o.n, f.ctx.n, o.n_opt->count() > 0);

  if (o.kind == "spherical") {
    if (o.M_opt->count() > 0) {
      f.ctx.M = o.M;
      f.ctx.check();
    }
    const qball::SpectralFunction F = qball::forward(f);
    deliver(o.format == "csv" ? qball::to_csv(F) : qball::to_json(F).dump(2) + "\n",
            o.out);
    return 0;
  }

  // berezin
  const qball::WeightParam w(f.ctx, o.alpha);
  const int Kout = o.K_opt->count() > 0 ? o.K : 0;
  const qball::RadialFunction image = qball::berezin_radial(f, w, Kout);
  deliver(o.format == "csv" ? qball::to_csv(image)
                            : qball::to_json(image).dump(2) + "\n",
          o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis on the quantum unit ball: identity verification, "
               "value tables, and radial transforms."};
  app.require_subcommand(1);

  CommonOpts vo, to, xo;

  const auto add_params = [](CLI::App* cmd, CommonOpts& o) {
    o.q_opt = cmd->add_option("--q", o.q, "deformation parameter, in (0,1)");
    o.n_opt = cmd->add_option("--n", o.n, "complex dimension of the ball");
    o.alpha_opt = cmd->add_option("--alpha", o.alpha, "weight exponent, positive");
    o.K_opt = cmd->add_option("--K", o.K, "radial lattice truncation");
    o.M_opt = cmd->add_option("--M", o.M, "spectral grid interval count (even)");
    cmd->add_option("--out", o.out, "write output to this path instead of stdout");
  };

  CLI::App* verify = app.add_subcommand(
      "verify", "run identity suites and report one line per check");
  add_params(verify, vo);
  verify->add_option("--suite", vo.suite, "check suite to run")
      ->check(CLI::IsMember(qball::verify::suite_names()));
  verify->add_option("--tol", vo.tol, "override every check tolerance");

  CLI::App* table = app.add_subcommand("table", "emit a table of special values");
  table
      ->add_option("kind", to.kind, "quantity to tabulate")
      ->required()
      ->check(CLI::IsMember(
          {"phi", "lambda", "b-symbol", "norms", "weights", "berezin-f0"}));
  add_params(table, to);
  table->add_option("--k-max", to.kmax, "largest lattice index / degree");
  table->add_option("--rho-nodes", to.rho_nodes,
                    "total node count of the inclusive spectral grid");
  to.format = "csv";
  table->add_option("--format", to.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* transform =
      app.add_subcommand("transform", "apply a transform to a function record");
  transform->add_option("kind", xo.kind, "transform to apply")
      ->required()
      ->check(CLI::IsMember({"spherical", "inverse", "berezin"}));
  add_params(transform, xo);
  transform->add_option("--input", xo.input, "path of the input JSON record")
      ->required();
  xo.format = "json";
  transform->add_option("--format", xo.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(vo);
    if (table->parsed()) {
      if (to.q_opt->count() == 0) throw std::invalid_argument("table requires --q");
      return run_table(to);
    }
    return run_transform(xo);
  } catch (const qball::accuracy_error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
}
