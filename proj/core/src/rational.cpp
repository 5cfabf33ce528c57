#include "apxkit/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace apx {

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
  return Rational(x);
}

std::string format_rational(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool parse_integer(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = (s[0] == '-');
    i = 1;
  }
  if (i == s.size()) return false;
  BigInt value = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    value = value * 10 + (s[i] - '0');
  }
  out = negative ? -value : value;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num, den;
    if (!parse_integer(text.substr(0, slash), num) || !parse_integer(text.substr(slash + 1), den) ||
        den == 0) {
      throw std::invalid_argument("parse_rational: bad fraction '" + std::string(text) + "'");
    }
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view head = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    BigInt int_part;
    bool negative = !head.empty() && head[0] == '-';
    if (head.empty() || head == "-" || head == "+") {
      int_part = 0;
    } else if (!parse_integer(head, int_part)) {
      throw std::invalid_argument("parse_rational: bad decimal '" + std::string(text) + "'");
    }
    if (frac.empty()) throw std::invalid_argument("parse_rational: bad decimal '" + std::string(text) + "'");
    BigInt frac_num = 0;
    BigInt scale = 1;
    for (char c : frac) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("parse_rational: bad decimal '" + std::string(text) + "'");
      frac_num = frac_num * 10 + (c - '0');
      scale *= 10;
    }
    BigInt magnitude = abs(int_part) * scale + frac_num;
    if (negative) magnitude = -magnitude;
    return Rational(magnitude, scale);
  }
  BigInt value;
  if (!parse_integer(text, value))
    throw std::invalid_argument("parse_rational: bad number '" + std::string(text) + "'");
  return Rational(value);
}

}  // namespace apx
