#include <doctest.h>

#include <sstream>

#include "leadelect/rational.hpp"

using leadelect::Rational;

TEST_CASE("construction normalizes to canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));  // sign moves to the numerator
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(10, 16).str() == "5/8");
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic is exact") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS_AS(a / Rational(0), std::invalid_argument);

  // A sum floating point cannot represent exactly.
  Rational sum(0);
  for (int d = 1; d <= 50; ++d) sum += Rational(1, d);
  Rational back(0);
  for (int d = 50; d >= 1; --d) back += Rational(1, d);
  CHECK(sum == back);
}

TEST_CASE("comparisons are exact") {
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(1, 3) > Rational(33, 100));
  CHECK(Rational(2, 3) >= Rational(2, 3));
  CHECK(leadelect::min(Rational(1, 3), Rational(1, 4)) == Rational(1, 4));
  CHECK(leadelect::max(Rational(-1, 3), Rational(-1, 4)) == Rational(-1, 4));
  CHECK(leadelect::abs(Rational(-7, 6)) == Rational(7, 6));
}

TEST_CASE("string round-trips preserve exact values") {
  const Rational values[] = {Rational(0),      Rational(1, 2), Rational(-7, 6),
                             Rational(355, 113), Rational(1),  Rational(2, 3)};
  for (const Rational& v : values) {
    CHECK(Rational::from_string(v.str()) == v);
  }
  CHECK(Rational::from_string("10/16") == Rational(5, 8));
  CHECK(Rational::from_string("3") == Rational(3));
  CHECK(Rational::from_string("-3/9") == Rational(-1, 3));
  CHECK_THROWS_AS(Rational::from_string("x/2"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string(""), std::invalid_argument);
}

TEST_CASE("huge denominators stay exact") {
  // Product of 200 path factors, the size the linear protocol produces.
  Rational p(1);
  for (int j = 1; j <= 200; ++j) p *= Rational(j, j + 1) - Rational(1, 100000);
  const Rational q = Rational::from_string(p.str());
  CHECK(q == p);
  CHECK(p > Rational(0));
  CHECK(p < Rational(1, 200));
}

TEST_CASE("pow2 handles both signs") {
  CHECK(Rational::pow2(0) == Rational(1));
  CHECK(Rational::pow2(4) == Rational(16));
  CHECK(Rational::pow2(-4) == Rational(1, 16));
  CHECK(Rational::pow2(-70) * Rational::pow2(70) == Rational(1));
}

TEST_CASE("stream output uses num/den form") {
  std::ostringstream os;
  os << Rational(-7, 6);
  CHECK(os.str() == "-7/6");
}
