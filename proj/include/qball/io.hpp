// SPDX-License-Identifier: MIT
//
// Serialization of radial and spectral functions: self-describing JSON
// records that carry the full evaluation context, and CSV emission with
// shortest round-trip numerals so repeated runs are byte-identical.

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qball/context.hpp"
#include "qball/lattice.hpp"
#include "qball/spherical.hpp"

namespace qball {

/// Thrown when an input file does not match the record schema; the message
/// names the offending field.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double x) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

namespace detail {

inline const nlohmann::ordered_json& require_field(const nlohmann::ordered_json& rec,
                                                   const std::string& record,
                                                   const std::string& name) {
  const auto it = rec.find(name);
  if (it == rec.end()) {
    throw parse_error(record + " record: missing field '" + name + "'");
  }
  return *it;
}

inline double number_field(const nlohmann::ordered_json& rec, const std::string& record,
                           const std::string& name) {
  const auto& v = require_field(rec, record, name);
  if (!v.is_number()) {
    throw parse_error(record + " record: field '" + name + "' must be a number");
  }
  return v.get<double>();
}

inline int int_field(const nlohmann::ordered_json& rec, const std::string& record,
                     const std::string& name) {
  const auto& v = require_field(rec, record, name);
  if (!v.is_number_integer()) {
    throw parse_error(record + " record: field '" + name + "' must be an integer");
  }
  return v.get<int>();
}

inline void check_type_tag(const nlohmann::ordered_json& rec, const std::string& record) {
  const auto it = rec.find("type");
  if (it != rec.end() && (!it->is_string() || it->get<std::string>() != record)) {
    throw parse_error(record + " record: field 'type' must be '" + record + "'");
  }
}

/// Applies the optional "context" subobject: policy knobs are read, core
/// fields must agree with the top-level record when repeated.
inline void apply_context_object(const nlohmann::ordered_json& rec, const std::string& record,
                                 QContext& ctx) {
  const auto it = rec.find("context");
  if (it == rec.end()) return;
  if (!it->is_object()) {
    throw parse_error(record + " record: field 'context' must be an object");
  }
  const auto& sub = *it;
  const auto sub_number = [&](const char* key) {
    const auto& v = sub.at(key);
    if (!v.is_number()) {
      throw parse_error(record + " record: field 'context." + key + "' must be a number");
    }
    return v.get<double>();
  };
  const auto sub_int = [&](const char* key) {
    const auto& v = sub.at(key);
    if (!v.is_number_integer()) {
      throw parse_error(record + " record: field 'context." + key + "' must be an integer");
    }
    return v.get<int>();
  };
  if (sub.contains("q") && sub_number("q") != ctx.q) {
    throw parse_error(record + " record: field 'context.q' disagrees with 'q'");
  }
  if (sub.contains("n") && sub_int("n") != ctx.n) {
    throw parse_error(record + " record: field 'context.n' disagrees with 'n'");
  }
  if (sub.contains("K")) ctx.K = sub_int("K");
  if (sub.contains("M")) ctx.M = sub_int("M");
  if (sub.contains("N_inf")) ctx.N_inf = sub_int("N_inf");
  if (sub.contains("eps_tail")) ctx.eps_tail = sub_number("eps_tail");
}

inline void read_sample_array(const nlohmann::ordered_json& rec, const std::string& record,
                              const std::string& name, std::size_t expected,
                              std::vector<double>& out) {
  const auto& arr = require_field(rec, record, name);
  if (!arr.is_array()) {
    throw parse_error(record + " record: field '" + name + "' must be an array");
  }
  if (arr.size() != expected) {
    std::ostringstream msg;
    msg << record << " record: field '" << name << "' must hold " << expected
        << " entries, found " << arr.size();
    throw parse_error(msg.str());
  }
  out.resize(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    if (!arr[i].is_number()) {
      std::ostringstream msg;
      msg << record << " record: field '" << name << "[" << i << "]' must be a number";
      throw parse_error(msg.str());
    }
    out[i] = arr[i].get<double>();
  }
}

}  // namespace detail

inline nlohmann::ordered_json context_json(const QContext& ctx) {
  nlohmann::ordered_json sub;
  sub["q"] = ctx.q;
  sub["n"] = ctx.n;
  sub["h"] = ctx.h;
  sub["K"] = ctx.K;
  sub["M"] = ctx.M;
  sub["N_inf"] = ctx.N_inf;
  sub["eps_tail"] = ctx.eps_tail;
  return sub;
}

inline nlohmann::ordered_json to_json(const RadialFunction& f) {
  nlohmann::ordered_json rec;
  rec["type"] = "radial";
  rec["q"] = f.ctx.q;
  rec["n"] = f.ctx.n;
  rec["K"] = f.ctx.K;
  rec["coeffs"] = f.coeffs;
  rec["context"] = context_json(f.ctx);
  return rec;
}

inline nlohmann::ordered_json to_json(const SpectralFunction& F) {
  nlohmann::ordered_json rec;
  rec["type"] = "spectral";
  rec["q"] = F.ctx.q;
  rec["n"] = F.ctx.n;
  rec["h"] = F.ctx.h;
  rec["M"] = F.ctx.M;
  rec["values"] = F.values;
  rec["context"] = context_json(F.ctx);
  return rec;
}

inline RadialFunction radial_from_json(const nlohmann::ordered_json& rec) {
  if (!rec.is_object()) throw parse_error("radial record: expected a JSON object");
  detail::check_type_tag(rec, "radial");
  const double q = detail::number_field(rec, "radial", "q");
  const int n = detail::int_field(rec, "radial", "n");
  QContext ctx(q, n);
  ctx.K = detail::int_field(rec, "radial", "K");
  detail::apply_context_object(rec, "radial", ctx);
  ctx.check();
  RadialFunction f(ctx);
  detail::read_sample_array(rec, "radial", "coeffs", static_cast<std::size_t>(ctx.K), f.coeffs);
  return f;
}

inline SpectralFunction spectral_from_json(const nlohmann::ordered_json& rec) {
  if (!rec.is_object()) throw parse_error("spectral record: expected a JSON object");
  detail::check_type_tag(rec, "spectral");
  const double q = detail::number_field(rec, "spectral", "q");
  const int n = detail::int_field(rec, "spectral", "n");
  QContext ctx(q, n);
  const double h = detail::number_field(rec, "spectral", "h");
  if (!(std::fabs(h - ctx.h) <= 1e-12 * (1.0 + std::fabs(ctx.h)))) {
    throw parse_error("spectral record: field 'h' is inconsistent with 'q'");
  }
  ctx.M = detail::int_field(rec, "spectral", "M");
  detail::apply_context_object(rec, "spectral", ctx);
  ctx.check();
  SpectralFunction F(ctx);
  detail::read_sample_array(rec, "spectral", "values", static_cast<std::size_t>(ctx.M) + 1,
                            F.values);
  return F;
}

/// Parses either record kind from JSON text, dispatching on the mandatory
/// field set; used by commands whose input kind is fixed by the subcommand.
inline nlohmann::ordered_json parse_record_text(const std::string& text) {
  try {
    return nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw parse_error(std::string("input is not valid JSON: ") + e.what());
  }
}

inline std::string to_csv(const RadialFunction& f) {
  std::string out = "k,coeff\n";
  for (int k = 0; k < f.ctx.K; ++k) {
    out += std::to_string(k);
    out += ',';
    out += format_double(f.coeffs[static_cast<std::size_t>(k)]);
    out += '\n';
  }
  return out;
}

inline std::string to_csv(const SpectralFunction& F) {
  std::string out = "j,rho,value\n";
  for (int j = 0; j <= F.ctx.M; ++j) {
    out += std::to_string(j);
    out += ',';
    out += format_double(F.rho_at(j));
    out += ',';
    out += format_double(F.values[static_cast<std::size_t>(j)]);
    out += '\n';
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace qball
