#include "kboxkit/rational.hpp"

#include <charconv>
#include <cmath>
#include <cctype>

#include "kboxkit/error.hpp"

namespace kboxkit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::DomainError: return "domain-error";
    case ErrorKind::PreconditionError: return "precondition-error";
    case ErrorKind::InternalInvariant: return "internal-invariant-error";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::IoError: return "io-error";
  }
  return "unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// The bigint string constructor reads a leading 0 as an octal prefix.
BigInt decimal_digits(std::string_view s) {
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  return BigInt{std::string(s)};
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw parse_error("malformed integer '" + std::string(s) + "'");
  BigInt value = decimal_digits(s);
  return negative ? BigInt(-value) : value;
}

BigInt pow10(long exponent) {
  BigInt result = 1;
  for (long i = 0; i < exponent; ++i) result *= 10;
  return result;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) {
      throw parse_error("malformed exponent in '" + std::string(text) + "'");
    }
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  long fraction_digits = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw parse_error("malformed decimal '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    fraction_digits = static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw parse_error("malformed number '" + std::string(text) + "'");
    digits = std::string(s);
  }
  Rational value{decimal_digits(digits)};
  long scale = exponent - fraction_digits;
  if (scale > 0) value *= Rational(pow10(scale));
  if (scale < 0) value /= Rational(pow10(-scale));
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw parse_error("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt p = parse_integer(text.substr(0, slash));
    std::string_view qs = text.substr(slash + 1);
    if (!all_digits(qs)) throw parse_error("malformed denominator in '" + std::string(text) + "'");
    BigInt q = decimal_digits(qs);
    if (q == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
    return Rational(p) / Rational(q);
  }
  return parse_decimal(text);
}

std::string format_rational(const Rational& value) {
  return numerator_of(value).str() + "/" + denominator_of(value).str();
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw invalid_parameter("non-finite value has no rational form");
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an exact integer for every finite double
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational result{BigInt(scaled)};
  int shift = exponent - 53;
  BigInt two_pow = 1;
  for (int i = 0; i < std::abs(shift); ++i) two_pow *= 2;
  if (shift >= 0) return result * Rational(two_pow);
  return result / Rational(two_pow);
}

Rational rational_from_decimal_double(double value) {
  if (!std::isfinite(value)) throw parse_error("non-finite number");
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) throw parse_error("cannot format number");
  return parse_decimal(std::string_view(buffer, static_cast<std::size_t>(end - buffer)));
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

BigInt numerator_of(const Rational& value) { return boost::multiprecision::numerator(value); }
BigInt denominator_of(const Rational& value) { return boost::multiprecision::denominator(value); }

}  // namespace kboxkit
