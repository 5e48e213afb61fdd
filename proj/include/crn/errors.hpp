#pragma once

#include <stdexcept>
#include <string>

namespace crn {

// Base class for all library failures.  Every throwing code path uses a
// subtype below, so callers can distinguish "bad input" from "numerics
// gave up" without string matching.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- circle-core ---------------------------------------------------------
struct StripExceeded : Error {
  double im_z;
  double strip;
  StripExceeded(double im, double h)
      : Error("evaluation point leaves the strip: |Im z| = " +
              std::to_string(im) + " > h = " + std::to_string(h)),
        im_z(im), strip(h) {}
};

struct OrbitLeftStrip : Error {
  int escape_index;
  explicit OrbitLeftStrip(int idx)
      : Error("orbit left the strip at iterate " + std::to_string(idx)),
        escape_index(idx) {}
};

struct NoConvergence : Error {
  double last_ratio;
  explicit NoConvergence(const std::string& what, double ratio = 0.0)
      : Error(what), last_ratio(ratio) {}
};

struct TailNotDecaying : Error {
  explicit TailNotDecaying(const std::string& what) : Error(what) {}
};

struct NotADiffeo : Error {
  double min_derivative;
  explicit NotADiffeo(double m1)
      : Error("map is not a certified diffeomorphism (min F' bound = " +
              std::to_string(m1) + ")"),
        min_derivative(m1) {}
};

// --- cf-mobius ------------------------------------------------------------
struct PoleAtZero : Error {
  PoleAtZero() : Error("Gauss branch evaluated at tau = 0") {}
};

struct DepthExceeded : Error {
  explicit DepthExceeded(const std::string& what) : Error(what) {}
};

struct PrecisionLoss : Error {
  int index;
  PrecisionLoss(const std::string& what, int idx) : Error(what), index(idx) {}
};

struct ImageAtInfinity : Error {
  ImageAtInfinity() : Error("Moebius image of the tangency point is infinity") {}
};

struct NonPositiveImaginaryPart : Error {
  NonPositiveImaginaryPart() : Error("point with Im z <= 0 where Im z > 0 is required") {}
};

struct NotFound : Error {
  explicit NotFound(const std::string& what) : Error(what) {}
};

// --- rotation -------------------------------------------------------------
struct EmptyLocking : Error {
  explicit EmptyLocking(const std::string& what) : Error(what) {}
};

struct RootFindingFailure : Error {
  explicit RootFindingFailure(const std::string& what) : Error(what) {}
};

// --- hyperbolic -----------------------------------------------------------
struct AlternationViolation : Error {
  explicit AlternationViolation(const std::string& what) : Error(what) {}
};

struct SlowConvergence : Error {
  double log_multiplier;
  explicit SlowConvergence(double loglam)
      : Error("multiplier too close to 1 for a Koenigs chart (|log lambda| = " +
              std::to_string(loglam) + ")"),
        log_multiplier(loglam) {}
};

struct CurveInvalid : Error {
  enum class Clause { above_below, image_position, chart_coverage, geometry };
  Clause clause;
  CurveInvalid(Clause c, const std::string& what)
      : Error("suitable-curve invariant violated (" + name(c) + "): " + what),
        clause(c) {}
  static std::string name(Clause c) {
    switch (c) {
      case Clause::above_below: return "above/below clause";
      case Clause::image_position: return "image-position clause";
      case Clause::chart_coverage: return "chart-coverage clause";
      default: return "geometry";
    }
  }
};

// --- torus-modulus --------------------------------------------------------
struct NonInjectiveInterpolation : Error {
  double min_jacobian;
  double at_x, at_y;
  NonInjectiveInterpolation(double j, double x, double y)
      : Error("interpolation map is not injective: min Jacobian " +
              std::to_string(j) + " at (x,y) = (" + std::to_string(x) + ", " +
              std::to_string(y) + ")"),
        min_jacobian(j), at_x(x), at_y(y) {}
};

struct DilatationTooLarge : Error {
  double sup_mu;
  explicit DilatationTooLarge(double s)
      : Error("Beltrami coefficient too large: sup |mu| = " + std::to_string(s)),
        sup_mu(s) {}
};

struct AliasingDetected : Error {
  double tail_fraction;
  int grid;
  AliasingDetected(double frac, int n)
      : Error("spectral tail of the solution exceeds threshold (fraction " +
              std::to_string(frac) + " at N = " + std::to_string(n) +
              "); use a larger grid"),
        tail_fraction(frac), grid(n) {}
};

// --- renorm ---------------------------------------------------------------
struct ChartResidualTooLarge : Error {
  double residual;
  explicit ChartResidualTooLarge(double r)
      : Error("shift-equation residual of the renormalization chart is " +
              std::to_string(r)),
        residual(r) {}
};

struct NoReturnWithinCap : Error {
  explicit NoReturnWithinCap(const std::string& what) : Error(what) {}
};

struct FitFailure : Error {
  explicit FitFailure(const std::string& what) : Error(what) {}
};

// --- atlas ----------------------------------------------------------------
struct PrecisionFloor : Error {
  int truncated_at;
  PrecisionFloor(const std::string& what, int r) : Error(what), truncated_at(r) {}
};

}  // namespace crn
