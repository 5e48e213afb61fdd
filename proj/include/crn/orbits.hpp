#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "crn/rotation.hpp"

namespace crn {

// One periodic orbit of f with rotation number p/q: the q points in [0,1)
// ordered by the dynamics (points[i+1] = f(points[i]) mod 1), the common
// multiplier of F^q - p along the orbit, and its stability kind.
struct PeriodicOrbit {
  std::vector<double> points;
  double multiplier = 0.0;
  bool attracting = false;
};

struct OrbitLift {
  double x = 0.0;      // lift position in [0,1)
  int orbit = 0;       // index into orbits
  bool attracting = false;
};

// All periodic orbits of a hyperbolic map with rot = p/q; 2n orbits of
// period q whose attracting and repelling points alternate on the circle.
struct PeriodicOrbitSet {
  std::int64_t q = 1;
  std::int64_t p = 0;
  std::vector<PeriodicOrbit> orbits;
  std::vector<OrbitLift> lifts;  // all 2nq points sorted left to right

  int points_per_period() const { return int(lifts.size()); }
};

inline PeriodicOrbitSet periodic_orbits(const FourierLift& f, const Rational& pq,
                                        int grid = 8192) {
  std::int64_t q = std::int64_t(pq.den().to_u64());
  std::int64_t p = pq.num().to_i64();
  HyperbolicityReport hyp = is_hyperbolic(f, pq);
  if (!hyp.hyperbolic)
    throw Error("periodic_orbits: map is not hyperbolic with rot = " +
                pq.to_string());

  for (int attempt = 0;; ++attempt) {
    std::vector<PeriodicPointWitness> roots =
        detail::periodic_points(f, p, q, grid);
    std::sort(roots.begin(), roots.end(),
              [](const PeriodicPointWitness& a, const PeriodicPointWitness& b) {
                return a.x < b.x;
              });
    bool ok = roots.size() >= 2 && roots.size() % 2 == 0;
    if (ok) {
      for (size_t i = 0; i + 1 < roots.size() && ok; ++i) {
        bool ri = roots[i].multiplier > 1.0, rn = roots[i + 1].multiplier > 1.0;
        if (ri == rn) ok = false;
      }
      if (ok && (roots.front().multiplier > 1.0) ==
                    (roots.back().multiplier > 1.0) &&
          roots.size() > 1)
        ok = (roots.front().multiplier > 1.0) != (roots.back().multiplier > 1.0);
    }
    if (!ok) {
      if (attempt == 0) {
        grid *= 4;  // one refinement pass, then fail loudly
        continue;
      }
      throw AlternationViolation(
          "periodic_orbits: attracting/repelling points do not alternate "
          "(missed roots?)");
    }

    PeriodicOrbitSet set;
    set.q = q;
    set.p = p;
    std::vector<int> orbit_of(roots.size(), -1);
    for (size_t seed = 0; seed < roots.size(); ++seed) {
      if (orbit_of[seed] >= 0) continue;
      PeriodicOrbit orb;
      orb.multiplier = roots[seed].multiplier;
      orb.attracting = orb.multiplier < 1.0;
      size_t cur = seed;
      for (std::int64_t step = 0; step < q; ++step) {
        orbit_of[cur] = int(set.orbits.size());
        orb.points.push_back(roots[cur].x);
        double next = f.eval_real(roots[cur].x);
        next -= std::floor(next);
        // match to the nearest root on the circle
        size_t best = 0;
        double bestd = 1e300;
        for (size_t j = 0; j < roots.size(); ++j) {
          double d = std::abs(roots[j].x - next);
          d = std::min(d, 1.0 - d);
          if (d < bestd) {
            bestd = d;
            best = j;
          }
        }
        if (bestd > 1e-6)
          throw RootFindingFailure(
              "periodic_orbits: orbit left the computed root set");
        cur = best;
      }
      if (cur != seed)
        throw RootFindingFailure("periodic_orbits: orbit did not close up");
      // multipliers agree along the orbit
      for (std::int64_t step = 0; step < q; ++step) {
        double m = f.iterate_jet(orb.points[size_t(step)], int(q)).d1;
        if (std::abs(m - orb.multiplier) > 1e-9 * (1.0 + orb.multiplier))
          throw RootFindingFailure(
              "periodic_orbits: multiplier varies along an orbit");
      }
      set.orbits.push_back(std::move(orb));
    }
    for (size_t i = 0; i < roots.size(); ++i)
      set.lifts.push_back(
          {roots[i].x, orbit_of[i], roots[i].multiplier < 1.0});
    if (set.orbits.size() % 2 != 0)
      throw AlternationViolation("periodic_orbits: odd number of orbits");
    return set;
  }
}

}  // namespace crn
