#include <cmath>
#include <random>

#include "crn/contfrac.hpp"
#include "doctest.h"

using namespace crn;

namespace {

// Reconstruct the value of a finite continued fraction bottom-up; used as an
// independent check on cf_of and convergents.
Rational reconstruct(const std::vector<std::int64_t>& terms) {
  Rational v(0);
  for (size_t i = terms.size(); i-- > 0;)
    v = Rational(1) / (Rational(terms[i]) + v);
  return v;
}

}  // namespace

TEST_SUITE_BEGIN("contfrac");

TEST_CASE("euclidean expansion of simple rationals") {
  CFExpansion cf = cf_of(Rational(2, 5));
  CHECK(cf.terms == std::vector<std::int64_t>{2, 2});
  CHECK(cf.terminated);
  CHECK(reconstruct(cf.terms) == Rational(2, 5));

  CFExpansion cf7 = cf_of(Rational(1, 7));
  CHECK(cf7.terms == std::vector<std::int64_t>{7});

  CFExpansion cf255 = cf_of(Rational(51, 200));
  CHECK(cf255.terms == std::vector<std::int64_t>{3, 1, 11, 1, 3});
  CHECK(reconstruct(cf255.terms) == Rational(51, 200));
}

TEST_CASE("golden mean expands into all ones") {
  CFExpansion cf = cf_of(golden_mean(60), 20);
  REQUIRE(cf.depth() == 20);
  for (std::int64_t k : cf.terms) CHECK(k == 1);
}

TEST_CASE("every term is at least one on random rationals") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    std::int64_t q = std::int64_t(rng() % 100000) + 2;
    std::int64_t p = std::int64_t(rng() % std::uint64_t(q - 1)) + 1;
    CFExpansion cf = cf_of(Rational(p, q));
    for (std::int64_t k : cf.terms) CHECK(k >= 1);
    CHECK(reconstruct(cf.terms) == Rational(p, q));
  }
}

TEST_CASE("convergents of the golden mean are Fibonacci ratios") {
  CFExpansion cf = cf_of(golden_mean(60), 10);
  std::vector<Rational> conv = convergents(cf, 5);
  std::vector<Rational> want = {Rational(0, 1), Rational(1, 1), Rational(1, 2),
                                Rational(2, 3), Rational(3, 5), Rational(5, 8)};
  REQUIRE(conv.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i) CHECK(conv[i] == want[i]);
}

TEST_CASE("convergents of 2/5 and the determinant identity") {
  CFExpansion cf = cf_of(Rational(2, 5));
  std::vector<Rational> conv = convergents(cf, 2);
  CHECK(conv[0] == Rational(0, 1));
  CHECK(conv[1] == Rational(1, 2));
  CHECK(conv[2] == Rational(2, 5));

  // p_{n+1} q_n - p_n q_{n+1} = +-1, exactly, for a few irrationals
  for (double x : {0.7548776662466927, 0.12909944487358056, 0.4142135623730951}) {
    CFExpansion e = cf_of(x, 25);
    std::vector<Rational> c = convergents(e, e.depth());
    for (size_t n = 0; n + 1 < c.size(); ++n) {
      BigInt det = c[n + 1].num() * BigInt(c[n].den()) -
                   c[n].num() * BigInt(c[n + 1].den());
      bool pm1 = det == BigInt(1) || det == BigInt(-1);
      CHECK(pm1);
    }
  }
  CHECK_THROWS_AS(convergents(cf, 3), DepthExceeded);
}

TEST_CASE("convergents against direct evaluation of the truncated fraction") {
  CFExpansion cf = cf_of(golden_mean(60), 12);
  std::vector<Rational> conv = convergents(cf, 12);
  for (int n = 1; n <= 12; ++n) {
    std::vector<std::int64_t> head(cf.terms.begin(), cf.terms.begin() + n);
    CHECK(conv[size_t(n)] == reconstruct(head));
  }
}

TEST_CASE("brjuno partial sum of the golden mean hits the geometric closed form") {
  // All tails of phi equal phi, so the sum is log(1/phi) * sum phi^n.
  double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double closed = std::log(1.0 / phi) / (1.0 - phi);
  BrjunoPartial s = brjuno_partial(golden_mean(60), 50);
  CHECK(std::abs(s.value - closed) < 1e-9);
  CHECK(s.tail_weight == doctest::Approx(std::pow(phi, 50)).epsilon(1e-9));
}

TEST_CASE("brjuno edge cases") {
  CHECK(brjuno_partial(golden_mean(40), 0).value == 0.0);
  // nonnegative terms make partial sums nondecreasing
  double prev = 0.0;
  for (int n = 1; n <= 30; ++n) {
    double v = brjuno_partial(golden_mean(40), n).value;
    CHECK(v >= prev);
    prev = v;
  }
  prev = 0.0;
  for (int n = 1; n <= 15; ++n) {
    double v = brjuno_partial(0.7548776662466927, n).value;
    CHECK(v >= prev);
    prev = v;
  }
  // a terminating expansion underflows
  CHECK_THROWS_AS(brjuno_partial(Rational(1, 3), 5), PrecisionLoss);
}

TEST_CASE("n_of_alpha on the golden mean") {
  // q_m phi - p_m = (-1)^m phi^{m+1}: positive for even m, and phi^{m+1}
  // first drops below 0.01 at m+1 = 10.  The smallest even m is 10.
  double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  int m_expect = -1;
  for (int m = 0; m < 30; ++m) {
    double e = (m % 2 == 0 ? 1.0 : -1.0) * std::pow(phi, m + 1);
    if (e > 0.0 && e < 0.01) {
      m_expect = m;
      break;
    }
  }
  REQUIRE(m_expect == 10);
  ReturnIndex r = n_of_alpha(golden_mean(60));
  CHECK(r.m == 10);
  CHECK(r.q_m == 89);  // Fibonacci: q_0..q_10 = 1,1,2,3,5,8,13,21,34,55,89
}

TEST_CASE("n_of_alpha on 0.255 by hand") {
  // 51/200 = [3,1,11,1,3]; convergents 0/1, 1/3, 1/4, 12/47, 13/51, 51/200.
  // q_m a - p_m: 0.255, -0.235, 0.02, -0.015, 0.005 -> first hit at m = 4.
  ReturnIndex r = n_of_alpha(0.255);
  CHECK(r.m == 4);
  CHECK(r.q_m == 51);
}

TEST_CASE("n_of_alpha flags rationals whose expansion ends first") {
  CHECK_THROWS_AS(n_of_alpha(Rational(1, 3)), NotFound);
}

TEST_SUITE_END();
