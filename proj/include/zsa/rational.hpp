#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "zsa/errors.hpp"

namespace zsa {

/// Arbitrary-precision rational. Payoffs, weights and the symmetrised matrix
/// are kept exact so arc directions and ties never depend on rounding.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "[-+]digits" or "[-+]digits/digits".
inline Rational parse_rational(std::string_view text) {
  auto fail = [&](const char* why) {
    return ParseError("invalid rational '" + std::string(text) + "': " + why);
  };
  std::size_t slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);

  auto check_digits = [&](std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw fail("missing digits");
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw fail("unexpected character");
    }
  };
  check_digits(num, true);
  std::string num_str(num);
  if (num_str[0] == '+') num_str.erase(0, 1);
  Integer n(num_str);
  if (slash == std::string_view::npos) return Rational(n);
  check_digits(den, false);
  Integer d{std::string(den)};
  if (d == 0) throw fail("zero denominator");
  return Rational(n, d);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
  const Integer& d = boost::multiprecision::denominator(r);
  if (d == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + d.str();
}

}  // namespace zsa
