#include <cmath>

#include "crn/rotation.hpp"
#include "doctest.h"

using namespace crn;

TEST_SUITE_BEGIN("rotation");

TEST_CASE("enclosures are exact on rigid rotations") {
  double alpha = 0.6180339887498949;
  FourierLift r = FourierLift::rotation(alpha);
  for (int q : {1, 2, 5, 13}) {
    RotEnclosure e = rot_enclosure(r, q);
    CHECK(e.lo == doctest::Approx(alpha).epsilon(1e-13));
    CHECK(e.hi == doctest::Approx(alpha).epsilon(1e-13));
  }
  CHECK(rot(r) == doctest::Approx(alpha).epsilon(1e-13));
}

TEST_CASE("one-iterate enclosure of the standard family has closed-form ends") {
  double eps = 0.6;
  FourierLift f = FourierLift::standard(0.0, eps);
  RotEnclosure e = rot_enclosure(f, 1);
  CHECK(e.contains(0.0));
  // max over x of t + (eps/2pi) sin = eps/2pi, min = -eps/2pi; the enclosure
  // includes those values plus a small grid slack
  CHECK(e.hi >= eps / kTwoPi - 1e-12);
  CHECK(e.hi <= eps / kTwoPi + 5e-4);
  CHECK(e.lo <= -eps / kTwoPi + 1e-12);
  CHECK(e.lo >= -eps / kTwoPi - 5e-4);
}

TEST_CASE("enclosures nest along convergent denominators") {
  // t chosen so rot is irrational-ish; convergent return times of the
  // estimate give nested enclosures
  FourierLift f = FourierLift::standard(0.38, 0.6);
  RotEstimate est = rot_estimate(f, 1e-10, 512);
  double v = est.value;
  CFExpansion cf = cf_of(v - std::floor(v), 12);
  std::vector<Rational> conv = convergents(cf, std::min(8, cf.depth()));
  std::vector<RotEnclosure> encs = {rot_enclosure(f, 1)};
  for (size_t i = 1; i < conv.size(); ++i) {
    if (!conv[i].den().fits_u64() || conv[i].den().to_u64() > 1200) break;
    int q = int(conv[i].den().to_u64());
    if (q <= encs.back().q_used) continue;
    encs.push_back(rot_enclosure(f, q));
  }
  REQUIRE(encs.size() >= 4);
  double reference = encs.back().mid();  // best available stand-in for rot
  for (size_t i = 1; i < encs.size(); ++i) {
    CHECK(encs[i].lo >= encs[i - 1].lo - 1e-9);
    CHECK(encs[i].hi <= encs[i - 1].hi + 1e-9);
    CHECK(encs[i].contains(reference));
  }
}

TEST_CASE("rot locks onto rationals exactly inside a tongue") {
  // t = 0 gives rot = 0 for the standard family (fixed point at 0)
  FourierLift f0 = FourierLift::standard(0.0, 0.6);
  RotEstimate e0 = rot_estimate(f0);
  REQUIRE(e0.is_rational());
  CHECK(*e0.rational == Rational(0));
  CHECK(e0.value == 0.0);

  // t = 1/2 lies in the middle of the 1/2 tongue by symmetry
  FourierLift f12 = FourierLift::standard(0.5, 0.6);
  RotEstimate e12 = rot_estimate(f12);
  REQUIRE(e12.is_rational());
  CHECK(*e12.rational == Rational(1, 2));
}

TEST_CASE("rot is weakly increasing in t for the standard family") {
  double eps = 0.6;
  double prev = -1e300, prev_w = 0.0;
  for (int i = 0; i <= 100; ++i) {
    double t = -0.1 + 1.2 * i / 100.0;
    RotEstimate e = rot_estimate(FourierLift::standard(t, eps), 1e-6, 128);
    double slack = std::max(prev_w, e.enclosure.width()) + 1e-12;
    CHECK(e.value >= prev - slack);
    prev = e.value;
    prev_w = e.enclosure.width();
  }
}

TEST_CASE("locking interval of 0/1 for the standard family is [-eps/2pi, eps/2pi]") {
  double eps = 0.6;
  MonotoneFamily fam(FourierLift::standard(0.0, eps), -0.3, 0.3);
  LockingInterval li = locking_interval(fam, Rational(0), 1e-11);
  CHECK(li.t_minus == doctest::Approx(-eps / kTwoPi).epsilon(1e-7));
  CHECK(li.t_plus == doctest::Approx(eps / kTwoPi).epsilon(1e-7));

  // rot at the midpoint collapses onto 0/1 (consistency with rot)
  RotEstimate mid = rot_estimate(fam.at(li.mid()));
  REQUIRE(mid.is_rational());
  CHECK(*mid.rational == Rational(0));
}

TEST_CASE("rotation-only family locks degenerate to points t = p/q") {
  MonotoneFamily fam(FourierLift::rotation(0.0), -0.1, 1.1);
  for (const Rational& pq : {Rational(1, 2), Rational(2, 5), Rational(1, 3)}) {
    LockingInterval li = locking_interval(fam, pq, 1e-12);
    double t = pq.to_double();
    CHECK(li.t_minus == doctest::Approx(t).epsilon(1e-9));
    CHECK(li.t_plus == doctest::Approx(t).epsilon(1e-9));
  }
}

TEST_CASE("locking endpoints bracket the rational strictly") {
  double eps = 0.6;
  MonotoneFamily fam(FourierLift::standard(0.0, eps), 0.2, 0.8);
  LockingInterval li = locking_interval(fam, Rational(1, 2), 1e-11);
  CHECK(li.length() > 0.0);
  double delta = 1e-3;
  RotEstimate below = rot_estimate(fam.at(li.t_minus - delta), 1e-8, 512);
  RotEstimate above = rot_estimate(fam.at(li.t_plus + delta), 1e-8, 512);
  CHECK(below.enclosure.hi < 0.5);
  CHECK(above.enclosure.lo > 0.5);
}

TEST_CASE("locking endpoints are parabolic: multiplier 1 at the double root") {
  double eps = 0.6;
  MonotoneFamily fam(FourierLift::standard(0.0, eps), -0.3, 0.3);
  LockingInterval li = locking_interval(fam, Rational(0), 1e-12);
  FourierLift f = fam.at(li.t_plus);
  // at t_plus the min of F - id is 0 with a double root; the multiplier
  // at the near-root is within 1e-4 of 1
  double xstar = 0.0, best = 1e300;
  for (int j = 0; j < 1 << 14; ++j) {
    double x = double(j) / (1 << 14);
    double v = std::abs(f.eval_real(x) - x);
    if (v < best) {
      best = v;
      xstar = x;
    }
  }
  CHECK(std::abs(f.eval_real(xstar, 1) - 1.0) < 1e-4);
}

TEST_CASE("hyperbolicity of the standard map at t = 0") {
  FourierLift f = FourierLift::standard(0.0, 0.6);
  HyperbolicityReport rep = is_hyperbolic(f, Rational(0));
  REQUIRE(rep.hyperbolic);
  REQUIRE(rep.witnesses.size() == 2);
  // fixed points 0 and 1/2 with multipliers 1 + eps and 1 - eps
  CHECK(rep.witnesses[0].x == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(rep.witnesses[0].multiplier == doctest::Approx(1.6).epsilon(1e-8));
  CHECK(rep.witnesses[1].x == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(rep.witnesses[1].multiplier == doctest::Approx(0.4).epsilon(1e-8));
}

TEST_CASE("parabolic endpoint and rigid rotations are not hyperbolic") {
  double eps = 0.6;
  MonotoneFamily fam(FourierLift::standard(0.0, eps), -0.3, 0.3);
  LockingInterval li = locking_interval(fam, Rational(0), 1e-12);
  CHECK(!is_hyperbolic(fam.at(li.t_plus), Rational(0)).hyperbolic);
  CHECK(!is_hyperbolic(FourierLift::rotation(0.0), Rational(0)).hyperbolic);
}

TEST_CASE("interior samples of a tongue are hyperbolic") {
  double eps = 0.6;
  MonotoneFamily fam(FourierLift::standard(0.0, eps), 0.2, 0.8);
  LockingInterval li = locking_interval(fam, Rational(1, 2), 1e-11);
  for (int i = 1; i <= 7; ++i) {
    double t = li.t_minus + li.length() * i / 8.0;
    HyperbolicityReport rep = is_hyperbolic(fam.at(t), Rational(1, 2));
    CHECK(rep.hyperbolic);
    for (const auto& w : rep.witnesses) CHECK(w.multiplier > 0.0);
  }
}

TEST_SUITE_END();
