#include "lll/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace lll {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) return Rational(BigInt(-num), BigInt(-den));
  return Rational(num, den);
}

BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

std::string fraction_string(const Rational& r) {
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

std::string approx_string(const Rational& r, int digits) {
  // Scientific rendering computed from the exact value so tiny fractions
  // like 2^-400 still print something meaningful.
  if (r == 0) return "0";
  BigInt num = numerator_of(r);
  const BigInt den = denominator_of(r);
  const bool negative = num < 0;
  if (negative) num = -num;

  // Find exponent such that 1 <= num/den * 10^-exp < 10.
  int exponent = 0;
  BigInt scaled_num = num;
  BigInt scaled_den = den;
  while (scaled_num >= scaled_den * 10) {
    scaled_den *= 10;
    ++exponent;
  }
  while (scaled_num < scaled_den) {
    scaled_num *= 10;
    --exponent;
  }
  std::string mantissa;
  for (int i = 0; i < digits; ++i) {
    BigInt digit = scaled_num / scaled_den;
    mantissa += static_cast<char>('0' + static_cast<int>(digit));
    scaled_num = (scaled_num - digit * scaled_den) * 10;
  }
  std::string out = negative ? "-" : "";
  out += mantissa.substr(0, 1);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  if (exponent != 0) out += "e" + std::to_string(exponent);
  return out;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    BigInt d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = make_rational(BigInt{std::string(num)}, d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    BigInt w = whole.empty() ? BigInt(0) : BigInt{std::string(whole)};
    BigInt scale = big_pow(10, frac.size());
    value = make_rational(w * scale + BigInt{std::string(frac)}, scale);
  } else {
    if (!all_digits(body))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    value = Rational(BigInt{std::string(body)});
  }
  return negative ? Rational(-value) : value;
}

BigInt big_pow(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

Rational rational_pow(const Rational& base, std::uint64_t exponent) {
  return make_rational(big_pow(numerator_of(base), exponent),
                       big_pow(denominator_of(base), exponent));
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

}  // namespace lll
