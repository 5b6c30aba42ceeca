#include "ctxrt/rational.hpp"

#include <cctype>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "ctxrt/error.hpp"

namespace ctxrt {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("not an integer: '" + std::string(s) + "'");
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InputError("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
      throw InputError("denominator must be unsigned: '" + std::string(text) + "'");
    }
    mpz_class den = parse_integer(den_text);
    if (den == 0) throw InputError("zero denominator: '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  // Decimal with optional exponent.
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    mpz_class ez = parse_integer(text.substr(e + 1));
    if (!ez.fits_slong_p() || abs(ez) > 10000) throw InputError("exponent out of range: '" + std::string(text) + "'");
    exponent = ez.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long fraction_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view whole = mantissa.substr(0, dot);
    std::string_view frac = mantissa.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw InputError("not a number: '" + std::string(text) + "'");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) {
      throw InputError("not a number: '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    fraction_digits = static_cast<long>(frac.size());
  } else {
    if (!all_digits(mantissa)) throw InputError("not a number: '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  Rational r{mpz_class(digits, 10)};
  long scale = exponent - fraction_digits;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale < 0) {
    r /= Rational(ten_pow);
  } else {
    r *= Rational(ten_pow);
  }
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

std::string format_rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

std::string format_decimal(const Rational& value, int significant_digits) {
  std::ostringstream out;
  out << std::setprecision(significant_digits) << value.get_d();
  return out.str();
}

}  // namespace ctxrt
