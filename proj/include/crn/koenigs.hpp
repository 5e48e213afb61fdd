#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "crn/fourier_lift.hpp"
#include "crn/orbits.hpp"

namespace crn {

// Truncated real power series in w = z - anchor, coefficients c[0..deg].
namespace series {

inline std::vector<double> compose(const std::vector<double>& outer,
                                   const std::vector<double>& inner,
                                   int deg) {
  // inner must have zero constant term
  std::vector<double> result(size_t(deg) + 1, 0.0);
  std::vector<double> power(size_t(deg) + 1, 0.0);
  power[0] = 1.0;
  result[0] = outer[0];
  for (int k = 1; k <= deg && k < int(outer.size()); ++k) {
    // power <- power * inner, truncated
    std::vector<double> next(size_t(deg) + 1, 0.0);
    for (int i = 0; i <= deg; ++i) {
      if (power[size_t(i)] == 0.0) continue;
      for (int j = 1; j <= deg - i && j < int(inner.size()); ++j)
        next[size_t(i + j)] += power[size_t(i)] * inner[size_t(j)];
    }
    power = next;
    for (int i = 0; i <= deg; ++i)
      result[size_t(i)] += outer[size_t(k)] * power[size_t(i)];
  }
  return result;
}

// Reversion: series of the inverse map, assuming c[0] = 0 and c[1] != 0.
inline std::vector<double> revert(const std::vector<double>& c, int deg) {
  std::vector<double> inv(size_t(deg) + 1, 0.0);
  inv[1] = 1.0 / c[1];
  for (int d = 2; d <= deg; ++d) {
    // coefficient of w^d in c(inv(w)) must vanish
    std::vector<double> comp = compose(c, inv, d);
    inv[size_t(d)] -= comp[size_t(d)] / c[1];
  }
  return inv;
}

template <typename Scalar>
Scalar eval(const std::vector<double>& c, Scalar w) {
  Scalar s = 0.0;
  for (size_t i = c.size(); i-- > 0;) s = s * w + c[i];
  return s;
}

template <typename Scalar>
Scalar eval_deriv(const std::vector<double>& c, Scalar w) {
  Scalar s = 0.0;
  for (size_t i = c.size(); i-- > 1;) s = s * w + double(i) * c[i];
  return s;
}

}  // namespace series

// Koenigs linearizing chart of g = F^q - p at a periodic point a:
// psi(g(z)) = lambda psi(z), psi(a) = 0.  The polynomial jet carries the
// chart near the anchor; evaluation further out rides the dynamics,
// psi(z) = lambda^{-k} psi(g^k z) for attracting points and the g^{-1} orbit
// for repelling ones.
class KoenigsChart {
 public:
  static constexpr int kDegree = 12;

  KoenigsChart() = default;

  KoenigsChart(const FourierLift& f, std::int64_t q, std::int64_t p,
               double anchor, double multiplier)
      : f_(f), q_(q), p_(p), anchor_(anchor), lambda_(multiplier) {
    if (std::abs(std::log(lambda_)) < 1e-3)
      throw SlowConvergence(std::abs(std::log(lambda_)));
    build_series();
    certify_radius();
  }

  // Push-forward under f of a chart at the previous orbit point: the new
  // chart at f(a) is psi_prev o F^{-1}, scaled by 1/F'(a) relative to a
  // Koenigs-normalized chart.  Same multiplier, same functional equation.
  static KoenigsChart push_forward(const KoenigsChart& prev,
                                   const FourierLift& f) {
    KoenigsChart next;
    next.f_ = f;
    next.q_ = prev.q_;
    next.p_ = prev.p_;
    next.lambda_ = prev.lambda_;
    double fa = f.eval_real(prev.anchor_);
    next.anchor_ = fa - std::floor(fa);
    // Taylor of F at the previous anchor (shifted to land at the new one),
    // then the series of F^{-1} about the new anchor
    std::vector<double> fw = f.taylor_real(prev.anchor_, kDegree);
    fw[0] = 0.0;  // centered: F(a + w) - F(a)
    std::vector<double> finv = series::revert(fw, kDegree);
    next.series_ = series::compose(prev.series_, finv, kDegree);
    next.series_[0] = 0.0;
    next.certify_radius();
    return next;
  }

  double anchor() const { return anchor_; }
  double multiplier() const { return lambda_; }
  bool attracting() const { return lambda_ < 1.0; }
  double radius() const { return radius_; }
  const std::vector<double>& coefficients() const { return series_; }

  // g = F^q - p and its derivative
  std::complex<double> g(std::complex<double> z) const {
    return f_.iterate(z, int(q_)) - double(p_);
  }
  std::complex<double> g_deriv(std::complex<double> z) const {
    std::complex<double> d = 1.0;
    for (std::int64_t i = 0; i < q_; ++i) {
      d *= f_.eval(z, 1);
      z = f_.eval(z);
    }
    return d;
  }

  // Newton branch of g^{-1} continuing from a guess.
  std::complex<double> g_inverse(std::complex<double> w,
                                 std::complex<double> guess) const {
    std::complex<double> z = guess;
    for (int i = 0; i < 60; ++i) {
      std::complex<double> r = g(z) - w;
      if (std::abs(r) < 1e-14) return z;
      z -= r / g_deriv(z);
    }
    throw NoConvergence("koenigs: g^{-1} Newton stalled");
  }

  std::complex<double> eval(std::complex<double> z) const {
    auto [zin, k] = pull_in(z);
    double scale = attracting() ? std::pow(lambda_, -double(k))
                                : std::pow(lambda_, double(k));
    return scale * series::eval(series_, zin - anchor_);
  }

  std::complex<double> eval_deriv(std::complex<double> z) const {
    std::complex<double> chain = 1.0;
    int k = 0;
    std::complex<double> cur = z;
    while (std::abs(cur - anchor_) > 0.6 * radius_ && k < 400) {
      if (attracting()) {
        chain *= g_deriv(cur);
        cur = g(cur);
      } else {
        cur = g_inverse(cur, cur);
        chain /= g_deriv(cur);
      }
      ++k;
    }
    if (std::abs(cur - anchor_) > 0.6 * radius_)
      throw Error("koenigs: point is outside the chart domain");
    double scale = attracting() ? std::pow(lambda_, -double(k))
                                : std::pow(lambda_, double(k));
    return scale * series::eval_deriv(series_, cur - anchor_) * chain;
  }

  // psi^{-1} with a continuation guess for the outward dynamics.
  std::complex<double> eval_inverse(std::complex<double> w,
                                    std::complex<double> guess) const {
    // bring w into the jet's range
    int k = 0;
    std::complex<double> win = w;
    double range = 0.5 * radius_;
    while (std::abs(win) > range && k < 400) {
      win *= attracting() ? lambda_ : 1.0 / lambda_;
      ++k;
    }
    // invert the jet by Newton (psi'(a) = series_[1])
    std::complex<double> u = win / series_[1];
    for (int i = 0; i < 60; ++i) {
      std::complex<double> r = series::eval(series_, u) - win;
      if (std::abs(r) < 1e-15 * std::max(1.0, std::abs(win))) break;
      u -= r / series::eval_deriv(series_, u);
    }
    std::complex<double> z = anchor_ + u;
    // push back out along the dynamics, tracking the continuation guess
    if (k > 0) {
      std::vector<std::complex<double>> path(size_t(k) + 1);
      path[0] = guess;
      for (int i = 1; i <= k; ++i)
        path[size_t(i)] = attracting() ? g(path[size_t(i) - 1])
                                       : g_inverse(path[size_t(i) - 1],
                                                   path[size_t(i) - 1]);
      for (int i = k; i-- > 0;)
        z = attracting() ? g_inverse(z, path[size_t(i)]) : g(z);
    }
    return z;
  }

  // residual of the defining equation at a point
  double equation_residual(std::complex<double> z) const {
    return std::abs(eval(g(z)) - lambda_ * eval(z));
  }

 private:
  void build_series() {
    // Taylor jet of g at the anchor: compose the Taylor series of F along
    // the orbit
    std::vector<double> gw = {0.0, 1.0};
    gw.resize(kDegree + 1, 0.0);
    double x = anchor_;
    std::vector<double> acc;
    for (std::int64_t i = 0; i < q_; ++i) {
      std::vector<double> fw = f_.taylor_real(x, kDegree);
      double fx = fw[0];
      fw[0] = 0.0;
      acc = i == 0 ? fw : series::compose(fw, acc, kDegree);
      x = fx;
    }
    // coefficients of the Koenigs limit psi = lim lambda^{-n} (g^n - a):
    // solving psi o G = lambda psi degree by degree gives the same (unique)
    // normalized linearizer; for repelling points work with the inverse jet
    std::vector<double> G = acc;
    double lam = lambda_;
    if (!attracting()) {
      G = series::revert(acc, kDegree);
      lam = 1.0 / lambda_;
    }
    // powers of G truncated at kDegree
    std::vector<std::vector<double>> gpow(size_t(kDegree) + 1);
    gpow[1] = G;
    for (int d = 2; d <= kDegree; ++d) {
      gpow[size_t(d)].assign(size_t(kDegree) + 1, 0.0);
      for (int i = 1; i <= kDegree; ++i) {
        if (gpow[size_t(d) - 1][size_t(i)] == 0.0) continue;
        for (int j = 1; i + j <= kDegree && j < int(G.size()); ++j)
          gpow[size_t(d)][size_t(i + j)] +=
              gpow[size_t(d) - 1][size_t(i)] * G[size_t(j)];
      }
    }
    std::vector<double> S(size_t(kDegree) + 1, 0.0);
    S[1] = 1.0;
    for (int D = 2; D <= kDegree; ++D) {
      double lower = 0.0;
      for (int d = 1; d < D; ++d) lower += S[size_t(d)] * gpow[size_t(d)][size_t(D)];
      S[size_t(D)] = lower / (lam - std::pow(lam, D));
    }
    series_ = S;
    series_[0] = 0.0;
  }

  void certify_radius() {
    // largest sampled ring on which the functional equation of the jet holds
    // to 1e-8
    double r0 = std::min(0.45, 0.9 * f_.strip());
    for (double r = r0; r > 1e-5; r *= 0.8) {
      bool ok = true;
      for (int j = 0; j < 16 && ok; ++j) {
        double th = (j + 0.5) / 16.0 * kTwoPi;
        std::complex<double> w = r * std::polar(1.0, th);
        std::complex<double> z = anchor_ + w;
        std::complex<double> gz;
        try {
          gz = g(z);
        } catch (const Error&) {
          ok = false;
          break;
        }
        // the whole certified disc must stay strip-safe under g, including
        // the slightly larger excursions of interior points
        if (std::abs(gz.imag()) > 0.85 * f_.strip()) {
          ok = false;
          break;
        }
        std::complex<double> lhs = series::eval(series_, gz - anchor_);
        std::complex<double> rhs =
            lambda_ * series::eval(series_, w);
        if (std::abs(lhs - rhs) > 1e-8 * std::max(1.0, std::abs(rhs)))
          ok = false;
      }
      if (ok) {
        radius_ = r;
        return;
      }
    }
    throw Error("koenigs: no radius certifies the functional equation");
  }

  std::pair<std::complex<double>, int> pull_in(std::complex<double> z) const {
    std::complex<double> cur = z;
    int k = 0;
    while (std::abs(cur - anchor_) > 0.6 * radius_ && k < 400) {
      cur = attracting() ? g(cur) : g_inverse(cur, cur);
      ++k;
    }
    if (std::abs(cur - anchor_) > 0.6 * radius_)
      throw Error("koenigs: point is outside the chart domain");
    return {cur, k};
  }

  FourierLift f_;
  std::int64_t q_ = 1, p_ = 0;
  double anchor_ = 0.0;
  double lambda_ = 0.5;
  std::vector<double> series_;
  double radius_ = 0.0;
};

// Charts along one orbit: a fresh Koenigs jet at the first point, the rest
// produced by push-forward under f.
inline std::vector<KoenigsChart> koenigs(const FourierLift& f,
                                         const PeriodicOrbitSet& set,
                                         int orbit_index) {
  const PeriodicOrbit& orb = set.orbits[size_t(orbit_index)];
  std::vector<KoenigsChart> charts;
  charts.emplace_back(f, set.q, set.p, orb.points[0], orb.multiplier);
  for (size_t i = 1; i < orb.points.size(); ++i)
    charts.push_back(KoenigsChart::push_forward(charts.back(), f));
  return charts;
}

}  // namespace crn
