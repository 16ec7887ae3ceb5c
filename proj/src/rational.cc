#include "netcut/rational.h"

#include <cmath>
#include <stdexcept>

namespace netcut {

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (s.find('/') != std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
      throw std::invalid_argument("bad rational: " + s);
    }
    r.canonicalize();
    return r;
  }
  // Decimal with optional exponent.
  std::size_t epos = s.find_first_of("eE");
  std::string mant = s.substr(0, epos);
  long exp10 = 0;
  if (epos != std::string::npos) exp10 = std::stol(s.substr(epos + 1));
  bool neg = false;
  std::size_t start = 0;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    start = 1;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (std::size_t i = start; i < mant.size(); ++i) {
    char c = mant[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad rational: " + s);
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("bad rational: " + s);
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad rational: " + s);
  mpz_class num(digits, 10);
  long shift = exp10 - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  Rational r = shift >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  Rational r(v);
  r.canonicalize();
  return r;
}

}  // namespace netcut
