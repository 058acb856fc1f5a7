#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "zsa/errors.hpp"
#include "zsa/game.hpp"

namespace zsa {

using json = nlohmann::json;

namespace detail {

inline Rational rational_from_json(const json& v) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Rational(v.get<unsigned long long>()) : Rational(v.get<long long>());
  }
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ParseError("matrix entries must be integers or rational strings like \"3/2\", got " + v.dump());
}

inline std::vector<std::string> labels_from_json(const json& doc, const char* key) {
  std::vector<std::string> out;
  if (!doc.contains(key) || doc[key].is_null()) return out;
  const json& arr = doc[key];
  if (!arr.is_array()) throw ParseError(std::string("'") + key + "' must be an array of strings");
  for (const json& l : arr) {
    if (!l.is_string()) throw ParseError(std::string("'") + key + "' must contain only strings");
    out.push_back(l.get<std::string>());
  }
  return out;
}

}  // namespace detail

/// Parses a game file:
///   {"mode": "symmetric"|"non-symmetric", "matrix": [[...]],
///    "row_labels": [...], "col_labels": [...]}
/// Entries are integers or "p/q" strings. Labels are optional.
inline Game parse_game(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("game file must be a JSON object");
  if (!doc.contains("mode") || !doc["mode"].is_string()) throw ParseError("missing string field 'mode'");
  std::string mode_str = doc["mode"].get<std::string>();
  GameMode mode;
  if (mode_str == "symmetric") {
    mode = GameMode::symmetric;
  } else if (mode_str == "non-symmetric") {
    mode = GameMode::non_symmetric;
  } else {
    throw ParseError("mode must be \"symmetric\" or \"non-symmetric\", got \"" + mode_str + "\"");
  }

  if (!doc.contains("matrix") || !doc["matrix"].is_array()) throw ParseError("missing array field 'matrix'");
  const json& rows = doc["matrix"];
  if (rows.empty()) throw ParseError("matrix is empty");
  if (!rows[0].is_array() || rows[0].empty()) throw ParseError("matrix rows must be non-empty arrays");
  std::size_t n = rows.size();
  std::size_t m = rows[0].size();
  RationalMatrix matrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != m) throw ParseError("matrix rows must all have the same length");
    for (std::size_t j = 0; j < m; ++j) matrix(i, j) = detail::rational_from_json(rows[i][j]);
  }

  auto row_labels = detail::labels_from_json(doc, "row_labels");
  auto col_labels = detail::labels_from_json(doc, "col_labels");
  if (mode == GameMode::symmetric && row_labels.empty()) row_labels = col_labels;
  try {
    return Game(mode, std::move(matrix), std::move(row_labels), std::move(col_labels));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline Game load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open game file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_game(buf.str());
}

/// Game file JSON. Integral entries are written as integers, others as "p/q".
inline json game_to_json(const Game& g) {
  json matrix = json::array();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const Rational& r = g.payoff(i, j);
      if (boost::multiprecision::denominator(r) == 1 && abs(r) < Rational(1LL << 53)) {
        row.push_back(boost::multiprecision::numerator(r).convert_to<long long>());
      } else {
        row.push_back(to_string(r));
      }
    }
    matrix.push_back(std::move(row));
  }
  json doc;
  doc["mode"] = to_string(g.mode());
  doc["matrix"] = std::move(matrix);
  doc["row_labels"] = g.row_labels();
  if (!g.is_symmetric()) doc["col_labels"] = g.col_labels();
  return doc;
}

}  // namespace zsa
