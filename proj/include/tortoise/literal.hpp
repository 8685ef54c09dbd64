#pragma once

// Potential literals: `[{"c":2,"p":-1}]`, `inv_log(0.5)`, `log(2)`, or the
// object form {"builtin":"log","strength":2}.

#include <cctype>
#include <cstdio>
#include <regex>
#include <string>

#include <json.hpp>

#include "errors.hpp"
#include "potentials.hpp"

namespace tortoise {

namespace detail {
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline LogPotential make_builtin(const std::string& name, double strength) {
  if (!std::isfinite(strength)) fail(ErrorKind::Parse, "builtin strength must be finite");
  if (name == "inv_log") return {LogPotential::Kind::InverseLog, strength};
  if (name == "log") return {LogPotential::Kind::Log, strength};
  fail(ErrorKind::Parse, "unknown builtin '" + name + "'");
}

inline double json_number(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) fail(ErrorKind::Parse, std::string("missing numeric field '") + key + "'");
  return it->get<double>();
}
}  // namespace detail

inline Potential parse_potential(const std::string& text) {
  static const std::regex call(R"(^\s*(inv_log|log)\s*\(\s*([^()\s]+)\s*\)\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, call)) {
    std::size_t used = 0;
    double s = 0.0;
    try {
      s = std::stod(m[2].str(), &used);
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "bad builtin strength '" + m[2].str() + "'");
    }
    if (used != m[2].str().size()) fail(ErrorKind::Parse, "bad builtin strength '" + m[2].str() + "'");
    return detail::make_builtin(m[1].str(), s);
  }

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("potential literal: ") + e.what());
  }

  if (j.is_object()) {
    auto b = j.find("builtin");
    if (b == j.end() || !b->is_string()) fail(ErrorKind::Parse, "object literal needs a 'builtin' name");
    return detail::make_builtin(b->get<std::string>(), detail::json_number(j, "strength"));
  }
  if (!j.is_array()) fail(ErrorKind::Parse, "potential literal must be a list of {c, p} pairs");

  std::vector<PowerTerm> terms;
  for (const auto& item : j) {
    if (!item.is_object()) fail(ErrorKind::Parse, "each term must be an object {\"c\":..,\"p\":..}");
    terms.push_back({detail::json_number(item, "c"), detail::json_number(item, "p")});
  }
  try {
    return PotentialSpec(std::move(terms));
  } catch (const Error& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

inline PotentialSpec parse_power_sum(const std::string& text) {
  auto p = parse_potential(text);
  if (auto* s = std::get_if<PotentialSpec>(&p)) return *s;
  fail(ErrorKind::Parse, "expected a power-sum literal");
}

inline std::string to_literal(const PotentialSpec& spec) {
  std::string out = "[";
  bool first = true;
  for (const auto& t : spec.terms()) {
    if (!first) out += ",";
    first = false;
    out += "{\"c\":" + detail::fmt17(t.coefficient) + ",\"p\":" + detail::fmt17(t.exponent) + "}";
  }
  return out + "]";
}

inline std::string to_literal(const LogPotential& v) {
  return std::string(v.kind == LogPotential::Kind::InverseLog ? "inv_log(" : "log(") + detail::fmt17(v.strength) + ")";
}

inline std::string to_literal(const Potential& v) {
  return std::visit([](const auto& x) { return to_literal(x); }, v);
}

}  // namespace tortoise
