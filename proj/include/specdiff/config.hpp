#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "expression.hpp"
#include "problems.hpp"

namespace specdiff {

namespace detail {

inline ParseError locate_parse_error(const ParseError& e, const std::string& text,
                                     const std::string& field) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < e.position && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return ParseError(field + ": " + e.what() + " (line " + std::to_string(line) +
                        ", column " + std::to_string(col) + ")",
                    e.position);
}

}  // namespace detail

// Build a problem from a JSON object. Two shapes are accepted: a built-in
// name with its parameters,
//
//   {"builtin": "dahlquist", "lambda": -3, "u0": 1, "t0": 0, "T": 2.5}
//   {"builtin": "circle", "T": 0.9}
//   {"builtin": "nonsmooth", "c": 0.3, "t0": -0.2, "T": 1.5}
//
// or an expression-defined source over t and u, with an optional exact
// solution over t:
//
//   {"source": "-(t*u)/(1 - t^2)", "u0": 1, "t0": 0, "T": 0.9,
//    "exact": "sqrt(1 - t^2)"}
inline IvpProblem load_problem(const std::string& config_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(config_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("problem config: ") + e.what());
  }
  if (!doc.is_object())
    throw ConfigError("problem config: expected a JSON object");

  const auto number = [&doc](const char* key) {
    if (!doc.contains(key))
      throw ConfigError(std::string("problem config: missing required parameter '") +
                        key + "'");
    if (!doc.at(key).is_number())
      throw ConfigError(std::string("problem config: parameter '") + key +
                        "' must be a number");
    return doc.at(key).get<double>();
  };
  const auto number_or = [&doc, &number](const char* key, double fallback) {
    return doc.contains(key) ? number(key) : fallback;
  };
  const auto text = [&doc](const char* key) {
    if (!doc.at(key).is_string())
      throw ConfigError(std::string("problem config: parameter '") + key +
                        "' must be a string");
    return doc.at(key).get<std::string>();
  };

  if (doc.contains("builtin")) {
    const std::string name = text("builtin");
    if (name == "dahlquist")
      return dahlquist(number("lambda"), number("u0"), number_or("t0", 0.0),
                       number("T"));
    if (name == "circle") return circle_problem(number("T"));
    if (name == "nonsmooth")
      return nonsmooth_linear(number("c"), number_or("t0", 0.0), number("T"));
    throw ConfigError("problem config: unknown builtin '" + name +
                      "' (known: dahlquist, circle, nonsmooth)");
  }

  if (!doc.contains("source"))
    throw ConfigError("problem config: needs either 'builtin' or 'source'");

  const std::string source_text = text("source");
  Expression source_expr;
  try {
    source_expr = Expression::parse(source_text, {"t", "u"});
  } catch (const ParseError& e) {
    throw detail::locate_parse_error(e, source_text, "source");
  }

  IvpProblem p;
  p.t0 = number_or("t0", 0.0);
  p.u0 = number("u0");
  p.T = number("T");
  if (!(p.T > p.t0)) throw ConfigError("problem config: need T > t0");
  p.source = [expr = source_expr](double t, double u) { return expr(t, u); };
  if (doc.contains("id")) p.id = text("id");

  if (doc.contains("exact")) {
    const std::string exact_text = text("exact");
    Expression exact_expr;
    try {
      exact_expr = Expression::parse(exact_text, {"t"});
    } catch (const ParseError& e) {
      throw detail::locate_parse_error(e, exact_text, "exact");
    }
    const double at_t0 = exact_expr(p.t0);
    if (!(std::fabs(at_t0 - p.u0) <= 1e-12 * std::max(1.0, std::fabs(p.u0))))
      throw ConfigError("problem config: exact(t0) disagrees with u0");
    p.exact = [expr = exact_expr](double t) { return expr(t); };
  }
  return p;
}

}  // namespace specdiff
