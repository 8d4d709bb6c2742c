#include "nilhom/rational.hpp"

#include <stdexcept>

namespace nilhom {

std::string ComplexRational::str() const {
  if (im == 0) return re.get_str();
  std::string s;
  if (re != 0) {
    s = re.get_str();
    s += (im > 0) ? "+" : "-";
  } else if (im < 0) {
    s = "-";
  }
  Rational a(abs(im));
  if (a != 1) s += a.get_str() + "*";
  s += "i";
  return s;
}

Rational rational_from_decimal(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
    q.canonicalize();
    return q;
  }
  bool negative = false;
  std::size_t pos = 0;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; pos < text.size(); ++pos) {
    char ch = text[pos];
    if (ch == '.') {
      if (seen_dot) throw std::invalid_argument("bad rational literal: " + text);
      seen_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits += ch;
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("bad rational literal: " + text);
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad rational literal: " + text);
  mpz_class num(digits.empty() ? "0" : digits, 10);
  mpz_class den(1);
  for (long k = 0; k < frac_digits; ++k) den *= 10;
  Rational q(num, den);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

}  // namespace nilhom
