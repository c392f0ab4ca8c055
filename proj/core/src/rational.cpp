#include "patient_pricing/rational.hpp"

#include "patient_pricing/errors.hpp"

#include <cctype>
#include <sstream>

namespace patient_pricing {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view digits) {
  return Integer(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ValidationError("empty rational literal: '" + std::string(text) + "'");

  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ValidationError("malformed rational literal: '" + std::string(text) + "'");
    }
    Integer d = parse_integer(den);
    if (d == 0) throw ValidationError("zero denominator in rational literal: '" + std::string(text) + "'");
    result = Rational(parse_integer(num), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) {
      throw ValidationError("malformed decimal literal: '" + std::string(text) + "'");
    }
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    result = Rational(parse_integer(whole) * scale + parse_integer(frac), scale);
  } else {
    if (!all_digits(s)) {
      throw ValidationError("malformed rational literal: '" + std::string(text) + "'");
    }
    result = Rational(parse_integer(s));
  }
  return negative ? Rational(-result) : result;
}

std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string format_decimal(double x, int significant_digits) {
  std::ostringstream out;
  out.precision(significant_digits);
  out << x;
  return out.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace patient_pricing
