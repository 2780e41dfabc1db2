#include "algstoch/rational.hpp"

#include "algstoch/errors.hpp"

#include <charconv>
#include <cctype>

namespace algstoch {

namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

cpp_int parse_integer(std::string_view digits) {
  cpp_int value = 0;
  for (char c : digits) value = value * 10 + (c - '0');
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("not a rational number: '" + original + "'");
    }
    cpp_int d = parse_integer(den);
    if (d == 0) throw ParseError("zero denominator in '" + original + "'");
    result = Rational(parse_integer(num), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw ParseError("not a decimal number: '" + original + "'");
    }
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    cpp_int num = (whole.empty() ? cpp_int(0) : parse_integer(whole)) * scale +
                  (frac.empty() ? cpp_int(0) : parse_integer(frac));
    result = Rational(num, scale);
  } else {
    if (!all_digits(text)) throw ParseError("not a rational number: '" + original + "'");
    result = Rational(parse_integer(text));
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
  const cpp_int& num = boost::multiprecision::numerator(value);
  const cpp_int& den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal_string(const Rational& value) {
  cpp_int den = boost::multiprecision::denominator(value);
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return format_double(to_double(value));

  const int digits = std::max(twos, fives);
  cpp_int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  cpp_int scaled = boost::multiprecision::numerator(value) * scale /
                   boost::multiprecision::denominator(value);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string body = scaled.str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return negative ? "-" + body : body;
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace algstoch
