#include <random>

#include "crn/rational.hpp"
#include "doctest.h"

using namespace crn;

TEST_SUITE_BEGIN("rational");

TEST_CASE("biguint arithmetic round trips through decimal strings") {
  BigUInt a(1234567890123456789ull);
  CHECK(a.to_string() == "1234567890123456789");
  BigUInt b = a * a;
  CHECK(b.to_string() == "1524157875323883675019051998750190521");
  BigUInt r;
  BigUInt q = BigUInt::divmod(b, a, &r);
  CHECK(q == a);
  CHECK(r.is_zero());
}

TEST_CASE("divmod agrees with 64-bit arithmetic on random values") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t x = rng(), y = rng() % 1000000 + 1;
    BigUInt r;
    BigUInt q = BigUInt::divmod(BigUInt(x), BigUInt(y), &r);
    CHECK(q.to_u64() == x / y);
    CHECK((r.is_zero() ? 0 : r.to_u64()) == x % y);
  }
}

TEST_CASE("isqrt is the floor square root") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    BigUInt x(rng());
    BigUInt x2 = x * x + BigUInt(rng() % 97);
    BigUInt r = BigUInt::isqrt(x2);
    CHECK(r * r <= x2);
    CHECK((r + BigUInt(1)) * (r + BigUInt(1)) > x2);
  }
}

TEST_CASE("rational reduction and ordering") {
  Rational a(6, 4), b(3, 2);
  CHECK(a == b);
  CHECK(a.den() == BigUInt(2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 3) < Rational(0));
  CHECK((Rational(2, 5) + Rational(1, 10)) == Rational(1, 2));
  CHECK((Rational(2, 5) * Rational(5, 2)) == Rational(1));
  CHECK((Rational(1, 3) / Rational(-2, 3)) == Rational(-1, 2));
}

TEST_CASE("floor handles negatives") {
  CHECK(Rational(7, 2).floor() == BigInt(3));
  CHECK(Rational(-7, 2).floor() == BigInt(-4));
  CHECK(Rational(-6, 2).floor() == BigInt(-3));
}

TEST_CASE("from_double is exact and round trips") {
  for (double x : {0.255, 1.0 / 3.0, -17.75, 5e-300, 0.6180339887498949}) {
    Rational r = Rational::from_double(x);
    CHECK(r.to_double() == x);
  }
  CHECK(Rational::from_double(0.25) == Rational(1, 4));
  CHECK(Rational::from_double(-1.5) == Rational(-3, 2));
}

TEST_CASE("golden mean constant matches sqrt(5) to the requested digits") {
  Rational phi = golden_mean(60);
  double want = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(phi.to_double() == doctest::Approx(want).epsilon(1e-15));
  // phi satisfies x^2 + x - 1 = 0 up to the truncation error of sqrt(5)
  Rational resid = phi * phi + phi - Rational(1);
  CHECK(std::abs(resid.to_double()) < 1e-59);
}

TEST_SUITE_END();
