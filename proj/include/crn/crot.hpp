#pragma once

#include <string>

#include "crn/rotation.hpp"
#include "crn/suitable_curve.hpp"
#include "crn/torus_modulus.hpp"

namespace crn {

// Modulus of the glued torus E_gamma(F) bounded by a suitable curve and its
// F-image.  For an anti-suitable curve the torus is computed with reversed
// orientation (Im sigma < 0) and the complex rotation number is the
// conjugate of its modulus.
inline ModulusResult crot_hyperbolic(const FourierLift& f,
                                     const SuitableCurve& curve,
                                     const CrotOptions& opt = {}) {
  GluedTorusProblem prob;
  prob.g0 = curve.graph;
  prob.glue = f;
  prob.omega = {0.0, 0.0};
  prob.conjugated = curve.polarity == Polarity::anti_suitable;
  InterpolationMap psi(prob, opt.schedule);
  std::complex<double> sigma = psi.lattice_sigma();
  if (prob.conjugated ? sigma.imag() >= 0.0 : sigma.imag() <= 0.0)
    throw Error("crot_hyperbolic: seam orientation is inconsistent with the "
                "curve polarity");
  int n = opt.grid;
  for (;;) {
    try {
      BeltramiGrid mu = beltrami_of(psi, n, sigma, opt.dilatation_guard);
      ModulusResult res = solve_torus(mu, opt.tol, 0, opt.dilatation_guard,
                                      opt.alias_threshold);
      if (prob.conjugated) res.tau = std::conj(res.tau);
      if (!(res.tau.imag() > 0.0))
        throw Error("crot_hyperbolic: modulus left the upper half-plane");
      return res;
    } catch (const AliasingDetected&) {
      if (n >= opt.max_grid) throw;
      n *= 2;
    }
  }
}

// Complex rotation number of a hyperbolic or locked map with rot = p/q.
struct CrotResult {
  std::complex<double> tau{0.0, 0.0};
  std::string pipeline;   // "rational", "suitable", "omega"
  double error = 0.0;     // a-posteriori estimate (grid convergence / fit)
  double residual = 0.0;  // solver residual of the accepted run
  bool hyperbolic = false;
};

// Dispatcher per the bubble theorem: non-hyperbolic locked maps sit on the
// real axis (tau = p/q); hyperbolic maps go through the suitable-curve
// pipeline with the omega-limit Richardson extrapolation as fallback.
inline CrotResult crot(const FourierLift& f, const Rational& pq,
                       const CrotOptions& opt = {}, double margin = 1e-4) {
  RotEstimate est = rot_estimate(f);
  if (!est.is_rational() || *est.rational != pq)
    throw Error("crot: rotation number is not certified equal to " +
                pq.to_string());
  CrotResult out;
  HyperbolicityReport hyp = is_hyperbolic(f, pq, margin);
  if (!hyp.hyperbolic) {
    out.tau = pq.to_double();
    out.pipeline = "rational";
    out.hyperbolic = false;
    return out;
  }
  out.hyperbolic = true;

  // minimal gap between consecutive periodic lifts fixes the height scale
  try {
    PeriodicOrbitSet set = periodic_orbits(f, pq);
    double min_gap = 1e300;
    for (size_t j = 0; j < set.lifts.size(); ++j) {
      double a = set.lifts[j].x;
      double b = j + 1 < set.lifts.size() ? set.lifts[j + 1].x
                                          : set.lifts[0].x + 1.0;
      min_gap = std::min(min_gap, b - a);
    }
    for (double frac : {0.25, 0.12, 0.4}) {
      try {
        SuitableCurve curve = build_suitable(f, pq, frac * min_gap);
        CrotOptions half = opt;
        half.grid = std::max(32, opt.grid / 2);
        ModulusResult coarse = crot_hyperbolic(f, curve, half);
        ModulusResult fine = crot_hyperbolic(f, curve, opt);
        out.tau = fine.tau;
        out.pipeline = "suitable";
        out.error = std::abs(fine.tau - coarse.tau);
        out.residual = fine.residual;
        return out;
      } catch (const CurveInvalid&) {
        continue;
      } catch (const NonInjectiveInterpolation&) {
        continue;
      } catch (const DilatationTooLarge&) {
        continue;
      }
    }
  } catch (const SlowConvergence&) {
    // near-parabolic charts: fall through to the omega limit
  } catch (const Error&) {
    // orbit machinery failed: fall through to the omega limit
  }

  OmegaLimit lim = richardson_crot_omega(f, 4, 10, 2, opt);
  out.tau = lim.tau;
  out.pipeline = "omega";
  out.error = lim.fit_residual;
  out.residual = lim.fit_residual;
  if (!(out.tau.imag() > 0.0))
    throw Error("crot: omega-limit extrapolation left the upper half-plane");
  return out;
}

}  // namespace crn
