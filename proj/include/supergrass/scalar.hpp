#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <string>
#include <string_view>

#include "supergrass/errors.hpp"

namespace supergrass {

namespace mp = boost::multiprecision;

using Integer =
    mp::number<mp::cpp_int_backend<128, 128, mp::signed_magnitude, mp::checked, void>>;

// Exact rational over a fixed-width checked integer: always in lowest terms,
// throws std::overflow_error rather than wrapping.
using Scalar = mp::number<
    mp::rational_adaptor<mp::cpp_int_backend<128, 128, mp::signed_magnitude, mp::checked, void>>>;

inline std::string to_string(const Scalar& s) {
  const Integer num = mp::numerator(s);
  const Integer den = mp::denominator(s);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace detail {

inline Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) throw ParseError("", "malformed rational '" + std::string(whole) + "'");
  Integer value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') throw ParseError("", "malformed rational '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

}  // namespace detail

// Accepts "p" or "p/q" with optional sign on p; no decimals, no whitespace.
inline Scalar parse_scalar(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Scalar(detail::parse_integer(text, text));
  const Integer num = detail::parse_integer(text.substr(0, slash), text);
  const auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
    throw ParseError("", "denominator must be unsigned in '" + std::string(text) + "'");
  const Integer den = detail::parse_integer(den_text, text);
  if (den == 0) throw ParseError("", "zero denominator in '" + std::string(text) + "'");
  return Scalar(num, den);
}

}  // namespace supergrass
