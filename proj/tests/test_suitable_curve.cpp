#include "crn/crot.hpp"
#include "crn/mobius.hpp"
#include "doctest.h"

using namespace crn;
using std::complex;

TEST_SUITE_BEGIN("suitable_curve");

TEST_CASE("suitable curve for the standard map, rot 0/1") {
  FourierLift f = FourierLift::standard(0.0, 0.6);
  SuitableCurve curve = build_suitable(f, Rational(0), 0.02);
  // passes above the repelling point 0 and below the attracting point 1/2
  CHECK(curve.graph.eval(0.0) > 0.0);
  CHECK(curve.graph.eval(0.5) < 0.0);
  CHECK(curve.image_margin > 0.0);
  CHECK(curve.arcs.size() == 2);
  // the validator is a separate code path; it must accept the curve
  validate_suitable(curve, f);
}

TEST_CASE("anti-suitable curve is the conjugate and also validates") {
  FourierLift f = FourierLift::standard(0.0, 0.6);
  SuitableCurve s = build_suitable(f, Rational(0), 0.02, Polarity::suitable);
  SuitableCurve a = build_suitable(f, Rational(0), 0.02, Polarity::anti_suitable);
  validate_suitable(a, f);
  for (int j = 0; j < 64; ++j) {
    double x = j / 64.0;
    CHECK(a.graph.eval(x) == doctest::Approx(-s.graph.eval(x)).epsilon(1e-12));
  }
}

TEST_CASE("curve of a rot 1/2 map has four arcs weaving the period-2 orbits") {
  FourierLift f(0.5, {{0.0, 0.0}, {0.0, 0.12 / kTwoPi}}, 0.08);
  SuitableCurve curve = build_suitable(f, Rational(1, 2), 0.01);
  CHECK(curve.arcs.size() == 4);
  CHECK(curve.image_margin > 0.0);
  validate_suitable(curve, f);
}

TEST_CASE("uselessly large heights fail the chart-coverage clause") {
  FourierLift f = FourierLift::standard(0.0, 0.6);
  CHECK_THROWS_AS(build_suitable(f, Rational(0), 5.0), CurveInvalid);
}

TEST_CASE("crot_hyperbolic is independent of the curve height") {
  FourierLift f = FourierLift::standard(0.0, 0.6);
  CrotOptions opt;
  opt.grid = 128;
  SuitableCurve c1 = build_suitable(f, Rational(0), 0.02);
  SuitableCurve c2 = build_suitable(f, Rational(0), 0.04);
  ModulusResult t1 = crot_hyperbolic(f, c1, opt);
  ModulusResult t2 = crot_hyperbolic(f, c2, opt);
  CHECK(t1.tau.imag() > 0.0);
  CHECK(std::abs(t1.tau - t2.tau) < 1e-5);
}

TEST_CASE("suitable and anti-suitable pipelines agree after conjugation") {
  FourierLift f = FourierLift::standard(0.0, 0.6);
  CrotOptions opt;
  opt.grid = 128;
  SuitableCurve s = build_suitable(f, Rational(0), 0.02, Polarity::suitable);
  SuitableCurve a = build_suitable(f, Rational(0), 0.02, Polarity::anti_suitable);
  ModulusResult ts = crot_hyperbolic(f, s, opt);
  ModulusResult ta = crot_hyperbolic(f, a, opt);
  CHECK(std::abs(ts.tau - ta.tau) < 1e-5);
}

TEST_CASE("curve pipeline agrees with the omega limit") {
  FourierLift f = FourierLift::standard(0.0, 0.6);
  CrotOptions opt;
  opt.grid = 128;
  SuitableCurve curve = build_suitable(f, Rational(0), 0.02);
  ModulusResult via_curve = crot_hyperbolic(f, curve, opt);
  OmegaLimit lim = richardson_crot_omega(f, 4, 9, 2, opt);
  CHECK(std::abs(via_curve.tau - lim.tau) < 1e-4);
}

TEST_CASE("crot dispatcher") {
  CrotOptions opt;
  opt.grid = 64;
  // rigid rotation by 1/2: not hyperbolic, tau = 1/2
  CrotResult flat = crot(FourierLift::rotation(0.5), Rational(1, 2), opt);
  CHECK(flat.pipeline == "rational");
  CHECK(flat.tau == complex<double>(0.5, 0.0));

  // hyperbolic standard map: strictly complex, reproducible across grids
  CrotResult c64 = crot(FourierLift::standard(0.0, 0.6), Rational(0), opt);
  CHECK(c64.pipeline == "suitable");
  CHECK(c64.tau.imag() > 0.0);
  CrotOptions opt2;
  opt2.grid = 128;
  CrotResult c128 = crot(FourierLift::standard(0.0, 0.6), Rational(0), opt2);
  CHECK(std::abs(c64.tau - c128.tau) < 1e-5);
  CHECK(c128.error < 1e-5);

  // wrong rational is rejected
  CHECK_THROWS_AS(crot(FourierLift::standard(0.0, 0.6), Rational(1, 2), opt),
                  Error);
}

TEST_CASE("tau lies in the q^-2 D_f / 4pi tangent disc at p/q") {
  FourierLift f = FourierLift::standard(0.0, 0.6);
  CrotOptions opt;
  opt.grid = 128;
  CrotResult r = crot(f, Rational(0), opt);
  double radius = distortion(f) / (4.0 * 3.14159265358979323846);
  TangentDisc disc(0.0, 2.0 * radius);
  CHECK(disc.contains(r.tau));
}

TEST_SUITE_END();
