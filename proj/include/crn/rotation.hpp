#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "crn/contfrac.hpp"
#include "crn/errors.hpp"
#include "crn/fourier_lift.hpp"
#include "crn/rational.hpp"

namespace crn {

// Certified interval around rot F obtained from one return time q:
// rot lies in [min(F^q - id)/q, max(F^q - id)/q].
struct RotEnclosure {
  double lo = 0.0;
  double hi = 0.0;
  int q_used = 1;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

namespace detail {

// Golden-section refinement of an extremum of g = F^q - id inside [a,b].
template <typename G>
double refine_extremum(const G& g, double a, double b, bool maximize) {
  const double gr = 0.6180339887498949;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double gc = g(c), gd = g(d);
  for (int i = 0; i < 80 && b - a > 1e-13; ++i) {
    bool pick_left = maximize ? (gc > gd) : (gc < gd);
    if (pick_left) {
      b = d;
      d = c;
      gd = gc;
      c = b - gr * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + gr * (b - a);
      gd = g(d);
    }
  }
  return maximize ? std::max(g(a), std::max(gc, std::max(gd, g(b))))
                  : std::min(g(a), std::min(gc, std::min(gd, g(b))));
}

struct GridExtrema {
  double min_value, max_value;
  double argmin, argmax;
  double d1_min = 1.0, d1_max = 1.0;  // range of (F^q)' observed on the grid
};

// Extrema of F^q(x) - x over one period: grid scan plus local refinement.
inline GridExtrema displacement_extrema(const FourierLift& f, int q, int grid) {
  auto g = [&](double x) { return f.iterate_jet(x, q).value - x; };
  double mn = 1e300, mx = -1e300, xmn = 0.0, xmx = 0.0;
  double d1mn = 1e300, d1mx = -1e300;
  for (int j = 0; j < grid; ++j) {
    double x = double(j) / grid;
    FourierLift::OrbitJet jet = f.iterate_jet(x, q);
    double v = jet.value - x;
    d1mn = std::min(d1mn, jet.d1);
    d1mx = std::max(d1mx, jet.d1);
    if (v < mn) {
      mn = v;
      xmn = x;
    }
    if (v > mx) {
      mx = v;
      xmx = x;
    }
  }
  double d = 1.0 / grid;
  GridExtrema e;
  e.min_value = refine_extremum(g, xmn - d, xmn + d, false);
  e.max_value = refine_extremum(g, xmx - d, xmx + d, true);
  e.argmin = xmn;
  e.argmax = xmx;
  e.d1_min = d1mn;
  e.d1_max = d1mx;
  return e;
}

// Bound on sup |(F^q)' - 1| for the Lipschitz slack: the smaller of the
// coefficient-norm product (sound, exponential in q) and 1.5x the derivative
// range observed along the grid orbits (tight for return times, where the
// Denjoy inequality keeps (F^q)' bounded).
inline double lip_bound(const FourierLift& f, int q, const GridExtrema& e) {
  double b1 = f.sup_d1();
  double m1 = std::max(f.min_derivative(), 0.0);
  double up = std::pow(b1, q) - 1.0;
  double dn = 1.0 - std::pow(m1, q);
  if (!std::isfinite(up)) up = 1e300;
  double coeff = std::max(up, dn);
  double measured =
      1.5 * std::max(std::max(e.d1_max - 1.0, 1.0 - e.d1_min), 0.0);
  return std::min(coeff, measured);
}

}  // namespace detail

inline RotEnclosure rot_enclosure(const FourierLift& f, int q, int grid = 0) {
  if (q < 1) throw Error("rot_enclosure: q must be >= 1");
  if (!f.certified_diffeo()) throw NotADiffeo(f.min_derivative());
  if (grid <= 0) grid = std::clamp(64 * q, 2048, 32768);
  detail::GridExtrema e = detail::displacement_extrema(f, q, grid);
  double slack = detail::lip_bound(f, q, e) * 0.5 / double(grid);
  RotEnclosure enc;
  enc.lo = (e.min_value - slack) / q;
  enc.hi = (e.max_value + slack) / q;
  enc.q_used = q;
  return enc;
}

// Result of the rotation number computation.  When the map locks onto a
// rational the value is exact and `rational` is set.
struct RotEstimate {
  double value = 0.0;
  RotEnclosure enclosure;
  bool converged = false;
  std::optional<Rational> rational;  // set when rot is certified rational

  bool is_rational() const { return rational.has_value(); }
};

namespace detail {

inline int enclosure_grid(std::int64_t q) {
  return std::clamp(int(32 * q), 2048, 16384);
}

}  // namespace detail

// Rotation number by enclosure descent: q advances through the denominators
// of the continued fraction of the running midpoint.  A sign straddle of
// F^q - id - p proves rot = p/q exactly, no slack involved, and collapses
// the enclosure onto the rational.
inline RotEstimate rot_estimate(const FourierLift& f, double tol = 1e-12,
                                std::int64_t q_budget = 4096) {
  if (tol < 1e-15) tol = 1e-15;
  RotEstimate out;

  // one scan serves both the straddle test and the enclosure
  auto scan = [&](std::int64_t q) {
    return detail::displacement_extrema(f, int(q), detail::enclosure_grid(q));
  };
  auto lock_and_enclose = [&](const detail::GridExtrema& e, std::int64_t p,
                              std::int64_t q) -> bool {
    if (e.min_value <= double(p) && double(p) <= e.max_value) {
      Rational r(p, q);
      out.value = r.to_double();
      out.rational = r;
      out.enclosure.lo = out.enclosure.hi = out.value;
      out.enclosure.q_used = int(q);
      out.converged = true;
      return true;
    }
    double slack = detail::lip_bound(f, int(q), e) * 0.5 /
                   detail::enclosure_grid(q);
    RotEnclosure next;
    next.lo = (e.min_value - slack) / double(q);
    next.hi = (e.max_value + slack) / double(q);
    next.q_used = int(q);
    if (out.enclosure.q_used >= 1 && out.enclosure.width() > 0.0) {
      next.lo = std::max(next.lo, out.enclosure.lo);
      next.hi = std::min(next.hi, out.enclosure.hi);
      if (next.lo > next.hi) next.lo = next.hi = 0.5 * (next.lo + next.hi);
    }
    out.enclosure = next;
    return false;
  };

  detail::GridExtrema e1 = scan(1);
  std::int64_t p_guess = std::int64_t(std::llround(0.5 * (e1.min_value + e1.max_value)));
  if (lock_and_enclose(e1, p_guess, 1)) return out;
  std::int64_t q_prev = 1;

  for (int step = 0; step < 64; ++step) {
    out.value = out.enclosure.mid();
    if (out.enclosure.width() < tol) {
      out.converged = true;
      return out;
    }
    double mid = out.enclosure.mid();
    double ip = std::floor(mid);
    double frac = mid - ip;
    std::int64_t q_next = 0, p_next = 0;
    if (frac < 1e-9 || frac > 1.0 - 1e-9) {
      // midpoint sits on an integer: retry the straddle at q = 1
      if (lock_and_enclose(scan(1), std::int64_t(std::llround(mid)), 1))
        return out;
      return out;
    }
    CFExpansion cf = cf_of(frac, 45);
    std::vector<Rational> conv = convergents(cf, cf.depth());
    for (size_t i = 1; i < conv.size(); ++i) {
      if (!conv[i].den().fits_u64()) break;
      std::int64_t q = std::int64_t(conv[i].den().to_u64());
      if (q > q_budget) break;
      if (q <= q_prev) continue;
      q_next = q;
      p_next = conv[i].num().to_i64() + std::int64_t(ip) * q;
      break;
    }
    if (q_next == 0) return out;  // budget exhausted
    if (lock_and_enclose(scan(q_next), p_next, q_next)) return out;
    q_prev = q_next;
  }
  return out;
}

inline double rot(const FourierLift& f, double tol = 1e-12) {
  return rot_estimate(f, tol).value;
}

// Parameter interval on which rot(F_t) = p/q.  t_minus is the root in t of
// max_x(F_t^q - id - p), t_plus the root of min_x; both are strictly
// increasing in t because dF_t/dt = 1.
struct LockingInterval {
  Rational pq;
  double t_minus = 0.0;
  double t_plus = 0.0;

  double length() const { return t_plus - t_minus; }
  double mid() const { return 0.5 * (t_minus + t_plus); }
};

inline LockingInterval locking_interval(const MonotoneFamily& fam,
                                        const Rational& pq, double tol = 1e-12,
                                        int grid = 0) {
  std::int64_t q = std::int64_t(pq.den().to_u64());
  double p = pq.num().to_double();
  if (grid <= 0) grid = detail::enclosure_grid(q);

  auto extrema = [&](double t) {
    return detail::displacement_extrema(fam.at(t), int(q), grid);
  };
  // scalar functions of t, both strictly increasing
  auto gmax = [&](double t) { return extrema(t).max_value - p * 1.0; };
  auto gmin = [&](double t) { return extrema(t).min_value - p * 1.0; };

  if (gmax(fam.t_hi) < 0.0 || gmin(fam.t_lo) > 0.0)
    throw EmptyLocking("locking_interval: rot = " + pq.to_string() +
                       " is not attained on the parameter range");

  auto bisect = [&](auto&& g, double lo, double hi) {
    double glo = g(lo);
    if (glo > 0.0) return lo;
    double ghi = g(hi);
    if (ghi < 0.0) return hi;
    for (int i = 0; i < 60 && hi - lo > tol; ++i) {
      double mid = 0.5 * (lo + hi);
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  LockingInterval li;
  li.pq = pq;
  li.t_minus = bisect(gmax, fam.t_lo, fam.t_hi);
  li.t_plus = bisect(gmin, fam.t_lo, fam.t_hi);
  if (li.t_minus > li.t_plus) li.t_minus = li.t_plus;  // point lock (rotation)
  return li;
}

// One periodic point with its multiplier, used as a hyperbolicity witness.
struct PeriodicPointWitness {
  double x;
  double multiplier;
};

struct HyperbolicityReport {
  bool hyperbolic = false;
  std::vector<PeriodicPointWitness> witnesses;
  double worst_margin = 0.0;  // min |multiplier - 1| over all roots
};

namespace detail {

// All roots of F^q - id - p in [0,1): sign scan plus Newton/bisection polish.
inline std::vector<PeriodicPointWitness> periodic_points(const FourierLift& f,
                                                         std::int64_t p,
                                                         std::int64_t q,
                                                         int grid = 8192) {
  auto g = [&](double x) { return f.iterate_jet(x, int(q)); };
  std::vector<double> vals(size_t(grid) + 1);
  for (int j = 0; j <= grid; ++j)
    vals[size_t(j)] = g(double(j) / grid).value - double(j) / grid - double(p);
  std::vector<PeriodicPointWitness> roots;
  for (int j = 0; j < grid; ++j) {
    double a = double(j) / grid, b = double(j + 1) / grid;
    double va = vals[size_t(j)], vb = vals[size_t(j) + 1];
    if (va == 0.0) {
      roots.push_back({a, g(a).d1});
      continue;
    }
    if (va * vb >= 0.0) continue;
    // bisection bracket, then Newton with a safeguard
    double lo = a, hi = b, x = 0.5 * (a + b);
    for (int it = 0; it < 80; ++it) {
      FourierLift::OrbitJet jet = g(x);
      double gv = jet.value - x - double(p);
      if (std::abs(gv) < 1e-14) break;
      (gv * va > 0.0 ? lo : hi) = x;
      double step = gv / (jet.d1 - 1.0);
      double xn = x - step;
      x = (xn > lo && xn < hi) ? xn : 0.5 * (lo + hi);
    }
    roots.push_back({x, g(x).d1});
  }
  return roots;
}

}  // namespace detail

// True iff rot F = p/q and every periodic point has multiplier bounded away
// from 1 by `margin`.  Orientation preserving maps have positive multipliers,
// so 1 is the only neutral value at stake.
inline HyperbolicityReport is_hyperbolic(const FourierLift& f,
                                         const Rational& pq,
                                         double margin = 1e-4,
                                         int grid = 8192) {
  std::int64_t q = std::int64_t(pq.den().to_u64());
  std::int64_t p = pq.num().to_i64();
  HyperbolicityReport rep;

  auto g = [&](double x) { return f.iterate_jet(x, int(q)); };
  // identity map (rigid rotation by p/q): displacement identically zero
  double sup_abs = 0.0;
  for (int j = 0; j < 256; ++j) {
    double x = double(j) / 256.0;
    sup_abs = std::max(sup_abs, std::abs(g(x).value - x - double(p)));
  }
  if (sup_abs < 1e-12) {
    rep.hyperbolic = false;
    rep.worst_margin = 0.0;
    return rep;
  }

  rep.witnesses = detail::periodic_points(f, p, q, grid);
  if (rep.witnesses.empty())
    throw RootFindingFailure("is_hyperbolic: rot = " + pq.to_string() +
                             " certified but no periodic points found");
  rep.worst_margin = 1e300;
  for (const auto& w : rep.witnesses)
    rep.worst_margin = std::min(rep.worst_margin, std::abs(w.multiplier - 1.0));

  // tangency scan: a local minimum of |g| that does not cross zero signals a
  // near-parabolic point the sign scan cannot see
  double tang = 1e300;
  for (int j = 0; j < grid; ++j) {
    double x0 = double(j) / grid, x1 = double(j + 1) / grid;
    FourierLift::OrbitJet j0 = g(x0), j1 = g(x1);
    double d0 = j0.d1 - 1.0, d1 = j1.d1 - 1.0;
    if (d0 * d1 > 0.0) continue;  // no critical point inside
    double v0 = j0.value - x0 - double(p);
    double v1 = j1.value - x1 - double(p);
    if (v0 * v1 < 0.0) continue;  // genuine sign change, already counted
    double crit = detail::refine_extremum(
        [&](double x) {
          FourierLift::OrbitJet jj = g(x);
          return std::abs(jj.value - x - double(p));
        },
        x0, x1, false);
    tang = std::min(tang, crit);
  }
  double scale = std::max(1.0, f.sup_d2());
  if (tang < margin * margin / scale) {
    rep.hyperbolic = false;
    rep.worst_margin = 0.0;
    return rep;
  }

  rep.hyperbolic = rep.worst_margin > margin;
  return rep;
}

}  // namespace crn
