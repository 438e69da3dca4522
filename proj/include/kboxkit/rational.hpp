#ifndef KBOXKIT_RATIONAL_HPP
#define KBOXKIT_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <string>
#include <string_view>

namespace kboxkit {

/// Exact rational scalar. Expression templates are disabled so the type
/// composes with Eigen dense containers.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Parses "p/q", an integer, or a finite decimal literal ("0.25", "-1.5e-3").
Rational parse_rational(std::string_view text);

/// Canonical text form: always "p/q" with q >= 1 and gcd(p, q) = 1.
std::string format_rational(const Rational& value);

/// Exact value of a finite double (every finite double is a dyadic rational).
Rational rational_from_double(double value);

/// Exact conversion of a double via its shortest round-tripping decimal form,
/// so a JSON literal such as 0.1 maps to 1/10 rather than the binary value.
Rational rational_from_decimal_double(double value);

double to_double(const Rational& value);

BigInt numerator_of(const Rational& value);
BigInt denominator_of(const Rational& value);

/// Conversion helpers used by the scalar-templated LP layer.
template <typename Scalar>
Scalar scalar_cast(const Rational& value);

template <>
inline Rational scalar_cast<Rational>(const Rational& value) {
  return value;
}

template <>
inline double scalar_cast<double>(const Rational& value) {
  return to_double(value);
}

inline Rational to_rational(const Rational& value) { return value; }
inline Rational to_rational(double value) { return rational_from_double(value); }

}  // namespace kboxkit

#endif  // KBOXKIT_RATIONAL_HPP
