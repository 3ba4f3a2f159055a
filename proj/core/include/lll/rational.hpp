#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace lll {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Builds num/den in lowest terms. Throws std::domain_error on den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

BigInt numerator_of(const Rational& r);
BigInt denominator_of(const Rational& r);

/// Always "p/q", including integers ("3/1").
std::string fraction_string(const Rational& r);

/// Decimal rendering for humans; not exact.
std::string approx_string(const Rational& r, int digits = 10);

/// Accepts "p/q", "p", "-p/q" and finite decimals ("1.25", "-0.5").
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

Rational rational_pow(const Rational& base, std::uint64_t exponent);
BigInt big_pow(const BigInt& base, std::uint64_t exponent);
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// Enclosure of Euler's number used wherever a gate mentions e.
struct EConstant {
  Rational lo = make_rational(2718281828, 1000000000);
  Rational hi = make_rational(2718281829, 1000000000);
};

}  // namespace lll
