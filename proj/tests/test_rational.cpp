#include <doctest.h>

#include "lll/rational.hpp"

using namespace lll;

TEST_CASE("rationals are stored in lowest terms with a positive denominator") {
  const Rational r = make_rational(6, -4);
  CHECK(numerator_of(r) == -3);
  CHECK(denominator_of(r) == 2);
  CHECK(fraction_string(r) == "-3/2");
  CHECK(fraction_string(Rational(5)) == "5/1");
  CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
}

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  CHECK(parse_rational("+7") == Rational(7));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-.5") == Rational(-1, 2));
  CHECK(parse_rational("123456789012345678901234567890/3") ==
        Rational(BigInt{"41152263004115226300411522630"}));
  for (const char* bad : {"", "1/0", "a", "1/2/3", "1.2.3", "--1", "1/-2", " 1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
  }
}

TEST_CASE("powers and binomials are exact") {
  CHECK(big_pow(2, 400) == BigInt(1) << 400);
  CHECK(rational_pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(rational_pow(Rational(5, 7), 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(100, 50) == BigInt{"100891344545564193334812497256"});
}

TEST_CASE("e enclosure brackets e") {
  const EConstant e;
  CHECK(e.lo < e.hi);
  CHECK(e.hi - e.lo == Rational(1, 1000000000));
  // e = 2.718281828459...
  CHECK(e.lo < parse_rational("2.718281828459"));
  CHECK(parse_rational("2.718281828460") < e.hi);
}

TEST_CASE("approx_string renders a short decimal") {
  CHECK(approx_string(Rational(1, 4), 3) == "2.50e-1");
  CHECK(approx_string(Rational(0), 3).find('0') != std::string::npos);
}
