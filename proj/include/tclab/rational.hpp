#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace tclab {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator. Backed by boost::multiprecision's cpp_int rational adaptor
/// with expression templates off: every operator materializes a value, so
/// `auto` and deduced lambda returns never capture dangling expression
/// nodes.
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                  boost::multiprecision::et_off>;

inline Rational rat(long long num, long long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Serialize as "p/q"; integers print without the "/1".
inline std::string rat_to_string(const Rational& q) {
  std::string s = rat_num(q).str();
  if (rat_den(q) != 1) s += "/" + rat_den(q).str();
  return s;
}

/// Parse "p", "p/q", or a plain decimal like "0.25" (exact).
inline std::optional<Rational> rat_parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt p(text.substr(0, slash));
      BigInt q(text.substr(slash + 1));
      if (q == 0) return std::nullopt;
      return Rational(p, q);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      size_t frac_len = text.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
      // Strip leading zeros; cpp_int would read them as an octal prefix.
      std::string sign_part;
      if (digits[0] == '-' || digits[0] == '+') {
        sign_part = digits.substr(0, 1);
        digits = digits.substr(1);
      }
      size_t first = digits.find_first_not_of('0');
      digits = (first == std::string::npos) ? "0" : digits.substr(first);
      BigInt p(sign_part + digits);
      BigInt q = 1;
      for (size_t i = 0; i < frac_len; ++i) q *= 10;
      return Rational(p, q);
    }
    return Rational(BigInt(text));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline Rational rat_parse_or_throw(const std::string& text) {
  auto r = rat_parse(text);
  if (!r) throw std::invalid_argument("cannot parse rational: '" + text + "'");
  return *r;
}

}  // namespace tclab
