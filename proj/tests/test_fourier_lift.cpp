#include <random>

#include "crn/fourier_lift.hpp"
#include "doctest.h"

using namespace crn;
using std::complex;

namespace {

FourierLift random_lift(std::mt19937_64& rng, int degree = 3,
                        double scale = 0.03) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<std::pair<double, double>> coef;
  for (int k = 0; k < degree; ++k) coef.emplace_back(u(rng), u(rng));
  return FourierLift(u(rng) * 10.0, coef, 0.2);
}

}  // namespace

TEST_SUITE_BEGIN("fourier_lift");

TEST_CASE("rotation lifts evaluate to z + alpha") {
  FourierLift r = FourierLift::rotation(0.371);
  complex<double> z(0.2, 0.1);
  CHECK(std::abs(r.eval(z) - (z + 0.371)) < 1e-15);
  CHECK(r.eval(z, 1) == complex<double>(1.0, 0.0));
  CHECK(r.eval(z, 2) == complex<double>(0.0, 0.0));
}

TEST_CASE("standard family derivative at zero is 1 + eps") {
  double eps = 0.37;
  FourierLift f = FourierLift::standard(0.1, eps);
  CHECK(f.eval(complex<double>(0.0, 0.0), 1).real() ==
        doctest::Approx(1.0 + eps).epsilon(1e-14));
  // finite-difference oracle
  double hstep = 1e-6;
  double fd = (f.eval_real(hstep) - f.eval_real(-hstep)) / (2.0 * hstep);
  CHECK(std::abs(fd - (1.0 + eps)) < 1e-7);
}

TEST_CASE("displacement is exactly 1-periodic and real symmetric") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 25; ++i) {
    FourierLift f = random_lift(rng);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    complex<double> z(u(rng), 0.15 * u(rng));
    CHECK(std::abs(f.eval(z + 1.0) - (f.eval(z) + 1.0)) < 1e-12);
    CHECK(std::abs(f.eval(std::conj(z)) - std::conj(f.eval(z))) < 1e-13);
  }
}

TEST_CASE("derivatives agree with central finite differences") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FourierLift f = random_lift(rng, 4);
  for (int i = 0; i < 100; ++i) {
    double x = u(rng);
    double d = 1e-6;
    double fd1 = (f.eval_real(x + d) - f.eval_real(x - d)) / (2.0 * d);
    double f1 = f.eval_real(x, 1);
    CHECK(std::abs(fd1 - f1) <= 1e-6 * (1.0 + std::abs(f1)));
    double fd2 = (f.eval_real(x + d, 1) - f.eval_real(x - d, 1)) / (2.0 * d);
    CHECK(std::abs(fd2 - f.eval_real(x, 2)) <= 1e-5 * (1.0 + f.sup_d2()));
  }
}

TEST_CASE("iterate: rotations, identity, composition-by-pairs oracle") {
  FourierLift r = FourierLift::rotation(0.137);
  CHECK(std::abs(r.iterate(complex<double>(0.0, 0.0), 10) - complex<double>(1.37, 0.0)) <
        1e-14);
  complex<double> z(0.3, 0.05);
  CHECK(r.iterate(z, 0) == z);

  FourierLift f = FourierLift::standard(0.3, 0.5);
  complex<double> w(0.11, 0.01);
  complex<double> direct = f.iterate(w, 8);
  // pairwise oracle: apply F o F four times
  complex<double> paired = w;
  for (int i = 0; i < 4; ++i) paired = f.eval(f.eval(paired));
  CHECK(std::abs(direct - paired) < 1e-12);
}

TEST_CASE("iterate reports the escape index when the orbit leaves the cap") {
  FourierLift f = FourierLift::standard(0.3, 0.5);
  complex<double> z(0.0, 0.05);
  try {
    f.iterate(z, 5, 0.01);
    FAIL("expected OrbitLeftStrip");
  } catch (const OrbitLeftStrip& e) {
    CHECK(e.escape_index == 0);
  }
}

TEST_CASE("invert_real") {
  FourierLift r = FourierLift::rotation(0.618);
  CHECK(r.invert_real(1.0) == doctest::Approx(1.0 - 0.618).epsilon(1e-14));

  FourierLift f = FourierLift::standard(0.21, 0.6);
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    double y = u(rng);
    double x = f.invert_real(y);
    CHECK(std::abs(f.eval_real(x) - y) < 1e-12);
  }
  // independent bisection oracle
  for (int i = 0; i < 50; ++i) {
    double y = u(rng);
    double lo = y - 2.0, hi = y + 2.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (f.eval_real(mid) < y ? lo : hi) = mid;
    }
    CHECK(std::abs(f.invert_real(y) - 0.5 * (lo + hi)) < 1e-9);
  }
}

TEST_CASE("distortion") {
  CHECK(distortion(FourierLift::rotation(0.3)) == 0.0);

  // independent of t for the standard family; trapezoid oracle at 2^16 nodes
  double eps = 0.45;
  FourierLift f1 = FourierLift::standard(0.0, eps);
  FourierLift f2 = FourierLift::standard(0.37, eps);
  double d1 = distortion(f1), d2 = distortion(f2);
  CHECK(d1 == doctest::Approx(d2).epsilon(1e-10));
  const int n = 1 << 16;
  double trap = 0.0;
  for (int j = 0; j < n; ++j) {
    double x = double(j) / n;
    trap += std::abs(f1.eval_real(x, 2)) / f1.eval_real(x, 1);
  }
  trap /= n;
  CHECK(d1 == doctest::Approx(trap).epsilon(1e-6));

  // invariance under conjugation by a rigid rotation (argument shift)
  double s = 0.2173;
  std::vector<std::pair<double, double>> coef;
  double w = kTwoPi;
  // F(x + s) - s has shifted coefficients
  coef.emplace_back(eps / w * std::sin(w * s), eps / w * std::cos(w * s));
  FourierLift shifted(0.0, coef, f1.strip());
  CHECK(distortion(shifted) == doctest::Approx(d1).epsilon(1e-8));
}

TEST_CASE("fit_from_samples") {
  // rotation samples give c0 = alpha with no coefficients
  const int n = 256;
  std::vector<double> disp(n, 0.377);
  FourierLift rot = fit_from_samples(disp, 0.3);
  CHECK(rot.degree() == 0);
  CHECK(rot.c0() == doctest::Approx(0.377).epsilon(1e-15));

  // degree-3 trig polynomial: exact recovery
  FourierLift target(0.12, {{0.01, -0.02}, {0.004, 0.0}, {-0.001, 0.0025}}, 0.3);
  std::vector<double> d3(n);
  for (int j = 0; j < n; ++j) {
    double x = double(j) / n;
    d3[size_t(j)] = target.eval_real(x) - x;
  }
  FourierLift fit = fit_from_samples(d3, 0.24);
  REQUIRE(fit.degree() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(fit.coef()[size_t(k)].first ==
          doctest::Approx(target.coef()[size_t(k)].first).epsilon(1e-12));
    CHECK(fit.coef()[size_t(k)].second ==
          doctest::Approx(target.coef()[size_t(k)].second).epsilon(1e-12));
  }
  CHECK(fit.fit_residual() < 1e-12);

  // white noise at 1e-3 cannot be truncated under a strict threshold
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  for (int j = 0; j < n; ++j) d3[size_t(j)] += u(rng);
  CHECK_THROWS_AS(fit_from_samples(d3, 0.2), TailNotDecaying);
}

TEST_CASE("fit round trips lifts with K <= N/4") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 10; ++i) {
    FourierLift f = random_lift(rng, 5);
    const int n = 64;
    std::vector<double> d(n);
    for (int j = 0; j < n; ++j) d[size_t(j)] = f.eval_real(double(j) / n) - double(j) / n;
    FourierLift g = fit_from_samples(d, f.strip());
    for (int j = 0; j < 200; ++j) {
      double x = j / 200.0;
      CHECK(std::abs(f.eval_real(x) - g.eval_real(x)) < 1e-12);
    }
  }
}

TEST_CASE("diffeo certificate") {
  CHECK(FourierLift::standard(0.0, 0.6).certified_diffeo());
  // the certificate is a slightly conservative lower bound for min F' = 0.4
  double m1 = FourierLift::standard(0.0, 0.6).min_derivative();
  CHECK(m1 > 0.398);
  CHECK(m1 <= 0.4 + 1e-12);
  // eps >= 1 is not a diffeomorphism
  FourierLift bad(0.0, {{0.0, 1.2 / kTwoPi}}, 0.05);
  CHECK(!bad.certified_diffeo());
  CHECK_THROWS_AS(bad.invert_real(0.5), NotADiffeo);
}

TEST_CASE("monotone family") {
  MonotoneFamily fam(FourierLift::standard(0.0, 0.5), -0.2, 1.2);
  FourierLift f = fam.at(0.25);
  CHECK(f.c0() == doctest::Approx(0.25));
  CHECK(fam.covers(0.0));
  CHECK(!fam.covers(2.0));
}

TEST_SUITE_END();
