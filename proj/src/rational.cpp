#include "textfit/rational.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <limits>

#include "textfit/errors.hpp"

namespace textfit {

namespace {

[[noreturn]] void bad(std::string_view text) {
  throw ParseError("not a rational number: '" + std::string(text) + "'");
}

long long parse_digits(std::string_view digits, std::string_view whole) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) bad(whole);
  return value;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
    if (s.empty()) bad(text);
  }

  long long num = 0;
  long long den = 1;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num_part = s.substr(0, slash);
    auto den_part = s.substr(slash + 1);
    if (!all_digits(num_part) || !all_digits(den_part)) bad(text);
    num = parse_digits(num_part, text);
    den = parse_digits(den_part, text);
    if (den == 0) bad(text);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto int_part = s.substr(0, dot);
    auto frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad(text);
    if (!int_part.empty() && !all_digits(int_part)) bad(text);
    if (!frac_part.empty() && !all_digits(frac_part)) bad(text);
    if (frac_part.size() > 18) bad(text);  // would overflow the denominator
    long long whole = int_part.empty() ? 0 : parse_digits(int_part, text);
    long long frac = frac_part.empty() ? 0 : parse_digits(frac_part, text);
    for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    if (whole > (std::numeric_limits<long long>::max() - frac) / den) bad(text);
    num = whole * den + frac;
  } else {
    if (!all_digits(s)) bad(text);
    num = parse_digits(s, text);
  }

  Rational result(num, den);
  return negative ? -result : result;
}

std::string to_string(const Rational& value) {
  std::string out = std::to_string(value.numerator());
  if (value.denominator() != 1) {
    out += '/';
    out += std::to_string(value.denominator());
  }
  return out;
}

double to_double(const Rational& value) {
  return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

std::string to_decimal_string(const Rational& value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", to_double(value));
  return buf;
}

}  // namespace textfit
