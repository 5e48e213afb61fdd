#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "crn/errors.hpp"
#include "crn/fft.hpp"

namespace crn {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Lift of an analytic circle map as a finite trigonometric series of its
// displacement:
//
//   F(x) = x + c0 + sum_k ( a_k cos 2 pi k x + b_k sin 2 pi k x ),
//
// real coefficients, so F(conj z) = conj F(z) and F(x+1) = F(x) + 1 exactly.
// h is the half-width of the strip |Im z| <= h on which evaluation is
// trusted.  The diffeomorphism certificate (a grid lower bound on F' minus a
// Lipschitz slack) is computed once at construction.
class FourierLift {
 public:
  FourierLift() { certify(); }

  FourierLift(double c0, std::vector<std::pair<double, double>> coef, double h)
      : c0_(c0), coef_(std::move(coef)), h_(h) {
    if (h <= 0.0) throw Error("FourierLift: strip half-width must be positive");
    certify();
  }

  static FourierLift rotation(double alpha, double h = 0.5) {
    return FourierLift(alpha, {}, h);
  }

  // The standard test family F(x) = x + t + (eps/2pi) sin 2 pi x.  The strip
  // is chosen so that F' stays away from zero on it: F'(z) = 1 + eps cos 2piz
  // vanishes first at |Im z| = acosh(1/eps)/2pi.
  static FourierLift standard(double t, double eps) {
    double h = 0.5;
    if (eps > 0.0 && eps < 1.0) h = 0.9 * std::acosh(1.0 / eps) / kTwoPi;
    return FourierLift(t, {{0.0, eps / kTwoPi}}, h);
  }

  double c0() const { return c0_; }
  const std::vector<std::pair<double, double>>& coef() const { return coef_; }
  int degree() const { return int(coef_.size()); }
  double strip() const { return h_; }
  bool certified_diffeo() const { return m1_ > 0.0; }
  double min_derivative() const { return m1_; }
  double fit_residual() const { return fit_residual_; }
  void set_fit_residual(double r) { fit_residual_ = r; }

  // sup_R |F'| and sup_R |F''| from coefficient norms.
  double sup_d1() const { return 1.0 + amp1_; }
  double sup_d2() const { return amp2_; }

  // Series evaluation of F, F' or F'' at a point of the strip.
  std::complex<double> eval(std::complex<double> z, int order = 0) const {
    if (std::abs(z.imag()) > h_ + 1e-15)
      throw StripExceeded(std::abs(z.imag()), h_);
    return eval_unchecked(z, order);
  }

  // F o ... o F, n times, aborting when an intermediate leaves |Im| <= cap.
  std::complex<double> iterate(std::complex<double> z, int n,
                               double cap = -1.0) const {
    if (n < 0) throw Error("iterate: n must be nonnegative");
    if (cap < 0.0) cap = h_;
    for (int i = 0; i < n; ++i) {
      if (std::abs(z.imag()) > cap) throw OrbitLeftStrip(i);
      z = eval_unchecked(z, 0);
    }
    if (std::abs(z.imag()) > cap) throw OrbitLeftStrip(n);
    return z;
  }

  // Real orbit with first and second derivatives of F^n accumulated along it
  // by the chain rule.
  struct OrbitJet {
    double value;
    double d1;
    double d2;
  };
  OrbitJet iterate_jet(double x, int n) const {
    OrbitJet j{x, 1.0, 0.0};
    for (int i = 0; i < n; ++i) {
      double f0, f1, f2;
      eval_jet_real(j.value, f0, f1, f2);
      j.d2 = f2 * j.d1 * j.d1 + f1 * j.d2;
      j.d1 = f1 * j.d1;
      j.value = f0;
    }
    return j;
  }

  // F, F', F'' at a real point with one trig evaluation per mode.
  void eval_jet_real(double x, double& f0, double& f1, double& f2) const {
    f0 = x + c0_;
    f1 = 1.0;
    f2 = 0.0;
    if (coef_.empty()) return;
    double c1 = std::cos(kTwoPi * x), s1 = std::sin(kTwoPi * x);
    double c = 1.0, s = 0.0;
    for (size_t k = 1; k <= coef_.size(); ++k) {
      double cn = c * c1 - s * s1;  // cos 2 pi k x by recurrence
      double sn = s * c1 + c * s1;
      c = cn;
      s = sn;
      double w = kTwoPi * double(k);
      double a = coef_[k - 1].first, b = coef_[k - 1].second;
      f0 += a * c + b * s;
      f1 += w * (-a * s + b * c);
      f2 += w * w * (-a * c - b * s);
    }
  }

  double eval_real(double x, int order = 0) const {
    double s = order == 0 ? x + c0_ : (order == 1 ? 1.0 : 0.0);
    for (size_t k = 1; k <= coef_.size(); ++k) {
      double w = kTwoPi * double(k);
      double c = std::cos(w * x), sn = std::sin(w * x);
      double a = coef_[k - 1].first, b = coef_[k - 1].second;
      switch (order) {
        case 0: s += a * c + b * sn; break;
        case 1: s += w * (-a * sn + b * c); break;
        case 2: s += w * w * (-a * c - b * sn); break;
        default: throw Error("eval: order must be 0, 1 or 2");
      }
    }
    return s;
  }

  // x with |F(x) - y| < 1e-12, bisection bracket plus Newton polish.
  double invert_real(double y, double tol = 1e-12) const {
    if (!certified_diffeo()) throw NotADiffeo(m1_);
    double amp = amp0_ + 1e-9;
    double lo = y - c0_ - amp, hi = y - c0_ + amp;
    // F - y is increasing; bisect until the bracket is small, then Newton.
    for (int i = 0; i < 48 && hi - lo > 1e-6; ++i) {
      double mid = 0.5 * (lo + hi);
      (eval_real(mid) < y ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 60; ++i) {
      double r = eval_real(x) - y;
      if (std::abs(r) < tol) return x;
      x -= r / eval_real(x, 1);
      x = std::min(std::max(x, lo - 1.0), hi + 1.0);
    }
    throw NoConvergence("invert_real: Newton did not reach |F(x)-y| < " +
                        std::to_string(tol));
  }

  // Taylor coefficients of F at a real point, degree <= deg:
  // F(a + w) = sum_j coeff[j] w^j.
  std::vector<double> taylor_real(double a, int deg) const {
    std::vector<double> c(size_t(deg) + 1, 0.0);
    c[0] = eval_real(a, 0);
    if (deg >= 1) c[1] = eval_real(a, 1);
    double fact = 1.0;
    for (int j = 2; j <= deg; ++j) {
      fact *= double(j);
      double s = 0.0;
      for (size_t k = 1; k <= coef_.size(); ++k) {
        double w = kTwoPi * double(k);
        double ph = w * a + double(j) * 1.5707963267948966;
        s += std::pow(w, j) * (coef_[k - 1].first * std::cos(ph) +
                               coef_[k - 1].second * std::sin(ph));
      }
      c[size_t(j)] = s / fact;
    }
    return c;
  }

 private:
  std::complex<double> eval_unchecked(std::complex<double> z, int order) const {
    std::complex<double> s =
        order == 0 ? z + c0_ : std::complex<double>(order == 1 ? 1.0 : 0.0, 0.0);
    if (coef_.empty()) return s;
    const std::complex<double> i2pi(0.0, kTwoPi);
    std::complex<double> e = std::exp(i2pi * z);
    std::complex<double> einv = 1.0 / e;
    std::complex<double> ek = 1.0, einvk = 1.0;
    for (size_t k = 1; k <= coef_.size(); ++k) {
      ek *= e;
      einvk *= einv;
      std::complex<double> ck = 0.5 * (ek + einvk);           // cos 2 pi k z
      std::complex<double> sk = std::complex<double>(0.0, -0.5) * (ek - einvk);
      double w = kTwoPi * double(k);
      double a = coef_[k - 1].first, b = coef_[k - 1].second;
      switch (order) {
        case 0: s += a * ck + b * sk; break;
        case 1: s += w * (-a * sk + b * ck); break;
        case 2: s += w * w * (-a * ck - b * sk); break;
        default: throw Error("eval: order must be 0, 1 or 2");
      }
    }
    return s;
  }

  void certify() {
    amp0_ = amp1_ = amp2_ = 0.0;
    for (size_t k = 1; k <= coef_.size(); ++k) {
      double amp = std::abs(coef_[k - 1].first) + std::abs(coef_[k - 1].second);
      double w = kTwoPi * double(k);
      amp0_ += amp;
      amp1_ += w * amp;
      amp2_ += w * w * amp;
    }
    const int n = 4096;
    double mn = 1e300;
    for (int j = 0; j < n; ++j) mn = std::min(mn, eval_real(double(j) / n, 1));
    m1_ = mn - amp2_ * 0.5 / double(n);  // Lipschitz slack over one grid cell
    if (coef_.empty()) m1_ = 1.0;
  }

  double c0_ = 0.0;
  std::vector<std::pair<double, double>> coef_;
  double h_ = 0.5;
  double m1_ = 1.0;
  double amp0_ = 0.0, amp1_ = 0.0, amp2_ = 0.0;
  double fit_residual_ = 0.0;
};

// Convenience wrappers mirroring the operation names used throughout.
inline std::complex<double> eval(const FourierLift& f, std::complex<double> z,
                                 int order = 0) {
  return f.eval(z, order);
}
inline std::complex<double> iterate(const FourierLift& f, std::complex<double> z,
                                    int n, double cap = -1.0) {
  return f.iterate(z, n, cap);
}
inline double invert_real(const FourierLift& f, double y) {
  return f.invert_real(y);
}

namespace detail {
inline double distortion_integrand(const FourierLift& f, double x) {
  return std::abs(f.eval_real(x, 2)) / f.eval_real(x, 1);
}
inline double adaptive_simpson(const FourierLift& f, double a, double b,
                               double fa, double fm, double fb, double whole,
                               double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = distortion_integrand(f, lm), frm = distortion_integrand(f, rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

// Distortion D_f = integral over one period of |F''/F'|, adaptive quadrature
// to relative tolerance ~1e-8.  The integrand has kinks at zeros of F'', so
// the integral is split on a moderately fine base grid first.
inline double distortion(const FourierLift& f) {
  if (!f.certified_diffeo()) throw NotADiffeo(f.min_derivative());
  if (f.degree() == 0) return 0.0;
  const int base = 64;
  double total = 0.0;
  double scale = std::max(1.0, f.sup_d2());
  for (int j = 0; j < base; ++j) {
    double a = double(j) / base, b = double(j + 1) / base;
    double m = 0.5 * (a + b);
    double fa = detail::distortion_integrand(f, a);
    double fm = detail::distortion_integrand(f, m);
    double fb = detail::distortion_integrand(f, b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    total += detail::adaptive_simpson(f, a, b, fa, fm, fb, whole,
                                      1e-9 * scale / base, 24);
  }
  return total;
}

// Discrete Fourier analysis of displacement samples on a uniform grid
// x_j = j/N (N a power of two).  Truncates at the smallest K whose tail is
// below `rel_tail` times the largest coefficient amplitude.
inline FourierLift fit_from_samples(const std::vector<double>& displacement,
                                    double h, double rel_tail = 1e-9) {
  const int n = int(displacement.size());
  if (n < 4 || (n & (n - 1)) != 0)
    throw Error("fit_from_samples: need a power-of-two grid of size >= 4");
  std::vector<std::complex<double>> d(displacement.begin(), displacement.end());
  fft(d, false);
  double c0 = d[0].real() / n;
  int kmax = n / 2 - 1;
  std::vector<double> a(size_t(kmax) + 1, 0.0), b(size_t(kmax) + 1, 0.0),
      amp(size_t(kmax) + 1, 0.0);
  double peak = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    a[size_t(k)] = 2.0 * d[size_t(k)].real() / n;
    b[size_t(k)] = -2.0 * d[size_t(k)].imag() / n;
    amp[size_t(k)] = std::abs(a[size_t(k)]) + std::abs(b[size_t(k)]);
    peak = std::max(peak, amp[size_t(k)]);
  }
  if (peak == 0.0) return FourierLift(c0, {}, h);
  double thresh = rel_tail * peak;
  // suffix maximum of the amplitudes; K is admissible when |a_k| + |b_k| is
  // below threshold for every k > K *and* the K-th coefficient itself is,
  // which is the stored analyticity proxy
  std::vector<double> tail(size_t(kmax) + 2, 0.0);
  for (int k = kmax; k >= 1; --k)
    tail[size_t(k)] = std::max(tail[size_t(k) + 1], amp[size_t(k)]);
  int K = -1;
  for (int k = 0; k <= kmax; ++k) {
    if ((k == 0 || amp[size_t(k)] <= thresh) && tail[size_t(k) + 1] <= thresh) {
      K = k;
      break;
    }
  }
  if (K < 0)
    throw TailNotDecaying(
        "fit_from_samples: no truncation K has tail below " +
        std::to_string(rel_tail) + " x peak (non-analytic or under-resolved)");
  // drop trailing coefficients at the double-precision floor
  while (K > 0 && amp[size_t(K)] <= 1e-13 * peak) --K;
  std::vector<std::pair<double, double>> coef;
  for (int k = 1; k <= K; ++k) coef.emplace_back(a[size_t(k)], b[size_t(k)]);
  FourierLift out(c0, std::move(coef), h);
  double res = 0.0;
  for (int j = 0; j < n; ++j) {
    double x = double(j) / n;
    res = std::max(res,
                   std::abs(out.eval_real(x) - (x + displacement[size_t(j)])));
  }
  out.set_fit_residual(res);
  return out;
}

// Monotone one-parameter family f_t = base + t (so df_t/dt = 1 > 0).
struct MonotoneFamily {
  FourierLift base;
  double t_lo = 0.0;
  double t_hi = 1.0;

  MonotoneFamily(FourierLift b, double lo, double hi)
      : base(std::move(b)), t_lo(lo), t_hi(hi) {
    if (!(lo < hi)) throw Error("MonotoneFamily: empty parameter interval");
  }

  FourierLift at(double t) const {
    return FourierLift(base.c0() + t, base.coef(), base.strip());
  }
  bool covers(double t) const { return t >= t_lo && t <= t_hi; }
};

}  // namespace crn
