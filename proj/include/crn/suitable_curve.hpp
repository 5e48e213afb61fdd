#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "crn/koenigs.hpp"
#include "crn/orbits.hpp"
#include "crn/torus_modulus.hpp"

namespace crn {

// One circular arc of the curve, stored in the coordinates of the chart it
// lives in.
struct CurveArc {
  int lift_index = 0;
  std::complex<double> center;  // circle center, chart coordinates
  double radius = 0.0;
  double w_from = 0.0, w_to = 0.0;  // real chart coordinates of the endpoints
  bool upper = false;               // arc in the upper half of the chart
};

enum class Polarity { suitable, anti_suitable };

// 1-periodic curve made of circular arcs in the linearizing charts, weaving
// above repelling and below attracting periodic points (reversed for the
// anti-suitable polarity), with F(gamma) strictly above (below) gamma.
// `graph` is a smooth trigonometric fit of Im vs Re used by the modulus
// engine; the arcs are the certificate of the definition.
struct SuitableCurve {
  Polarity polarity = Polarity::suitable;
  Rational pq;
  double height = 0.0;
  std::vector<CurveArc> arcs;
  // arc_points[i]: dynamical-plane samples of arcs[i] (suitable orientation)
  std::vector<std::vector<std::complex<double>>> arc_points;
  std::vector<std::complex<double>> polyline;  // one period, Re increasing
  TrigSeries graph;
  double image_margin = 0.0;  // min of Im F(gamma) - gamma at matched Re

  std::complex<double> at(double x) const { return {x, graph.eval(x)}; }
};

namespace detail {

struct ChartAtLift {
  KoenigsChart chart;
  double anchor;
  bool attracting;
};

inline std::vector<ChartAtLift> charts_at_lifts(const FourierLift& f,
                                                const PeriodicOrbitSet& set) {
  std::vector<std::vector<KoenigsChart>> per_orbit;
  per_orbit.reserve(set.orbits.size());
  for (int i = 0; i < int(set.orbits.size()); ++i)
    per_orbit.push_back(koenigs(f, set, i));
  std::vector<ChartAtLift> out;
  for (const OrbitLift& lift : set.lifts) {
    const std::vector<KoenigsChart>& charts = per_orbit[size_t(lift.orbit)];
    const KoenigsChart* found = nullptr;
    for (const KoenigsChart& c : charts) {
      double d = std::abs(c.anchor() - lift.x);
      d = std::min(d, 1.0 - d);
      if (d < 1e-9) {
        found = &c;
        break;
      }
    }
    if (!found)
      throw Error("suitable curve: no chart anchored at a lift point");
    out.push_back({*found, lift.x, lift.attracting});
  }
  return out;
}

// circle through (w0, 0) and (w1, 0) with apex at signed height h
inline CurveArc arc_through(double w0, double w1, double h, int lift_index) {
  CurveArc arc;
  arc.lift_index = lift_index;
  arc.w_from = w0;
  arc.w_to = w1;
  arc.upper = h > 0.0;
  double m = 0.5 * (w0 + w1);
  double r = 0.5 * (w1 - w0);
  double ah = std::abs(h);
  double yc = (ah * ah - r * r) / (2.0 * ah);  // signed toward the apex
  arc.center = {m, h > 0.0 ? yc : -yc};
  arc.radius = ah - yc;
  return arc;
}

// sample the arc from w_from to w_to through the apex
inline std::vector<std::complex<double>> arc_samples(const CurveArc& a, int m) {
  double th0 = std::arg(std::complex<double>(a.w_from, 0.0) - a.center);
  double th1 = std::arg(std::complex<double>(a.w_to, 0.0) - a.center);
  if (a.upper) {
    // sweep decreasing from th0 in (pi/2, pi) to th1 in (0, pi/2)
    if (th1 > th0) th1 -= 2.0 * 3.14159265358979323846;
  } else {
    if (th1 < th0) th1 += 2.0 * 3.14159265358979323846;
  }
  std::vector<std::complex<double>> pts;
  pts.reserve(size_t(m) + 1);
  for (int i = 0; i <= m; ++i) {
    double th = th0 + (th1 - th0) * double(i) / m;
    pts.push_back(a.center + a.radius * std::polar(1.0, th));
  }
  return pts;
}

}  // namespace detail

// Numerical check of the three defining clauses.  Independent of the
// constructor: evaluates charts forward on the stored polyline, tests the
// above/below signs of the smooth graph, and measures the image-position
// margin on a dense grid.
inline void validate_suitable(const SuitableCurve& curve, const FourierLift& f,
                              int dense = 2048) {
  bool anti = curve.polarity == Polarity::anti_suitable;
  PeriodicOrbitSet set = periodic_orbits(f, curve.pq);

  // (1) the sampled arc points sit on their circles in the charts
  std::vector<detail::ChartAtLift> charts = detail::charts_at_lifts(f, set);
  if (curve.arcs.size() != curve.arc_points.size())
    throw CurveInvalid(CurveInvalid::Clause::geometry,
                       "arc sample bookkeeping is inconsistent");
  for (size_t k = 0; k < curve.arcs.size(); ++k) {
    const CurveArc& arc = curve.arcs[k];
    const detail::ChartAtLift& cl = charts[size_t(arc.lift_index)];
    const auto& pts = curve.arc_points[k];
    for (size_t i = 0; i < pts.size(); i += 5) {
      std::complex<double> w = cl.chart.eval(pts[i]);
      double resid = std::abs(std::abs(w - arc.center) - arc.radius);
      if (resid > 1e-6 * std::max(1.0, arc.radius))
        throw CurveInvalid(CurveInvalid::Clause::geometry,
                           "arc point off its chart circle by " +
                               std::to_string(resid));
    }
  }

  // (2) above repelling / below attracting (reversed when anti-suitable)
  for (const OrbitLift& lift : set.lifts) {
    double v = curve.graph.eval(lift.x);
    bool want_above = !lift.attracting != anti;  // repelling & suitable: above
    if ((want_above && v <= 0.0) || (!want_above && v >= 0.0))
      throw CurveInvalid(CurveInvalid::Clause::above_below,
                         "curve on the wrong side of the lift at x = " +
                             std::to_string(lift.x));
  }

  // (3) F(gamma) strictly above gamma (below for anti-suitable), compared at
  // matched real parts
  double margin = 1e300;
  for (int j = 0; j < dense; ++j) {
    double x = double(j) / dense;
    std::complex<double> y = f.eval(curve.at(x));
    double diff = y.imag() - curve.graph.eval(y.real());
    if (anti) diff = -diff;
    margin = std::min(margin, diff);
  }
  if (margin <= 0.0)
    throw CurveInvalid(CurveInvalid::Clause::image_position,
                       "image of the curve is not strictly on the required "
                       "side (margin " +
                           std::to_string(margin) + ")");
}

// Construct a suitable (or anti-suitable) curve for a hyperbolic map:
// concentric-chord circular arcs of apex height `height` in each linearizing
// chart, joined at real crossing points halfway between consecutive
// periodic lifts.
inline SuitableCurve build_suitable(const FourierLift& f, const Rational& pq,
                                    double height,
                                    Polarity polarity = Polarity::suitable,
                                    int samples_per_arc = 48,
                                    int graph_modes = 48) {
  if (height <= 0.0) throw Error("build_suitable: height must be positive");
  PeriodicOrbitSet set = periodic_orbits(f, pq);
  std::vector<detail::ChartAtLift> charts = detail::charts_at_lifts(f, set);
  const int n_pts = int(set.lifts.size());

  // crossing points halfway between consecutive lifts (last one wraps)
  std::vector<double> cross(size_t(n_pts), 0.0);
  for (int j = 0; j < n_pts; ++j) {
    double a = set.lifts[size_t(j)].x;
    double b = j + 1 < n_pts ? set.lifts[size_t(j) + 1].x
                             : set.lifts[0].x + 1.0;
    cross[size_t(j)] = 0.5 * (a + b);
  }

  SuitableCurve curve;
  curve.polarity = polarity;
  curve.pq = pq;
  curve.height = height;

  // build arcs in the suitable orientation; the anti-suitable curve is the
  // complex conjugate, taken at the end
  std::vector<std::complex<double>> poly;
  for (int j = 0; j < n_pts; ++j) {
    const detail::ChartAtLift& cl = charts[size_t(j)];
    double c_left = j == 0 ? cross[size_t(n_pts) - 1] - 1.0 : cross[size_t(j) - 1];
    double c_right = cross[size_t(j)];
    std::complex<double> w0c, w1c;
    try {
      w0c = cl.chart.eval(std::complex<double>(c_left, 0.0));
      w1c = cl.chart.eval(std::complex<double>(c_right, 0.0));
    } catch (const Error& e) {
      throw CurveInvalid(CurveInvalid::Clause::chart_coverage,
                         std::string("crossing point outside the chart: ") +
                             e.what());
    }
    double w0 = w0c.real(), w1 = w1c.real();
    if (!(w0 < 0.0 && 0.0 < w1))
      throw CurveInvalid(CurveInvalid::Clause::chart_coverage,
                         "crossing points do not bracket the chart origin");
    // repelling lifts carry the arc above the axis on a suitable curve
    double apex = cl.attracting ? -height : height;
    CurveArc arc = detail::arc_through(w0, w1, apex, j);
    curve.arcs.push_back(arc);

    std::vector<std::complex<double>> wsamples =
        detail::arc_samples(arc, samples_per_arc);
    // map back to the dynamical plane by chart inversion with continuation
    std::complex<double> guess(c_left, 0.0);
    std::vector<std::complex<double>> zsamples;
    for (size_t i = 0; i < wsamples.size(); ++i) {
      std::complex<double> z;
      try {
        z = cl.chart.eval_inverse(wsamples[i], guess);
      } catch (const Error& e) {
        throw CurveInvalid(CurveInvalid::Clause::chart_coverage,
                           std::string("arc point left the chart domain: ") +
                               e.what());
      }
      guess = z;
      if (i == 0 || i + 1 == wsamples.size()) z = {z.real(), 0.0};
      zsamples.push_back(z);
      poly.push_back(z);
    }
    curve.arc_points.push_back(std::move(zsamples));
  }

  // order by real part over one period starting at the first crossing
  std::sort(poly.begin(), poly.end(),
            [](std::complex<double> a, std::complex<double> b) {
              return a.real() < b.real();
            });
  for (size_t i = 0; i + 1 < poly.size(); ++i)
    if (poly[i + 1].real() - poly[i].real() < -1e-12)
      throw CurveInvalid(CurveInvalid::Clause::geometry,
                         "curve is not a graph over Re z");
  curve.polyline = poly;

  // smooth trigonometric graph through the polyline (linear resample + DFT)
  const int ngrid = 2048;
  std::vector<double> samples(size_t(ngrid), 0.0);
  double x0 = poly.front().real();
  for (int j = 0; j < ngrid; ++j) {
    double x = x0 + double(j) / ngrid;
    // locate the segment containing x (polyline spans one period)
    double xm = x;
    if (xm > poly.back().real()) xm -= 1.0;
    if (xm < poly.front().real()) xm += 1.0;
    size_t lo = 0, hi = poly.size() - 1;
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      (poly[mid].real() <= xm ? lo : hi) = mid;
    }
    double span = poly[hi].real() - poly[lo].real();
    double tloc = span > 0.0 ? (xm - poly[lo].real()) / span : 0.0;
    samples[size_t(j)] =
        (1.0 - tloc) * poly[lo].imag() + tloc * poly[hi].imag();
  }
  // shift the sample origin back to x = 0 by resampling the fitted series
  TrigSeries shifted = TrigSeries::fit(samples, graph_modes);
  std::vector<double> at_zero(size_t(ngrid), 0.0);
  for (int j = 0; j < ngrid; ++j)
    at_zero[size_t(j)] = shifted.eval(double(j) / ngrid - x0);
  curve.graph = TrigSeries::fit(at_zero, graph_modes);

  if (polarity == Polarity::anti_suitable) {
    for (auto& z : curve.polyline) z = std::conj(z);
    curve.graph.c0 = -curve.graph.c0;
    for (auto& ab : curve.graph.ab) {
      ab.first = -ab.first;
      ab.second = -ab.second;
    }
  }

  validate_suitable(curve, f);

  // record the image margin for diagnostics
  double margin = 1e300;
  const int dense = 1024;
  for (int j = 0; j < dense; ++j) {
    double x = double(j) / dense;
    std::complex<double> y = f.eval(curve.at(x));
    double diff = y.imag() - curve.graph.eval(y.real());
    if (polarity == Polarity::anti_suitable) diff = -diff;
    margin = std::min(margin, diff);
  }
  curve.image_margin = margin;
  return curve;
}

}  // namespace crn
