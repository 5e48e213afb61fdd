#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "crn/errors.hpp"
#include "crn/fft.hpp"
#include "crn/fourier_lift.hpp"

namespace crn {

// 1-periodic real trigonometric series c0 + sum a_k cos 2 pi k x + b_k sin.
// Used for boundary-curve graphs Im Gamma as a function of Re Gamma.
struct TrigSeries {
  double c0 = 0.0;
  std::vector<std::pair<double, double>> ab;

  double eval(double x, int order = 0) const {
    double s = order == 0 ? c0 : 0.0;
    if (ab.empty()) return s;
    double c1 = std::cos(kTwoPi * x), s1 = std::sin(kTwoPi * x);
    double c = 1.0, sn = 0.0;
    for (size_t k = 1; k <= ab.size(); ++k) {
      double cn = c * c1 - sn * s1, sn2 = sn * c1 + c * s1;
      c = cn;
      sn = sn2;
      double w = kTwoPi * double(k);
      double a = ab[k - 1].first, b = ab[k - 1].second;
      switch (order) {
        case 0: s += a * c + b * sn; break;
        case 1: s += w * (-a * sn + b * c); break;
        case 2: s += w * w * (-a * c - b * sn); break;
        default: throw Error("TrigSeries: order must be 0, 1 or 2");
      }
    }
    return s;
  }

  bool is_zero() const { return c0 == 0.0 && ab.empty(); }

  // periodic antiderivative of a mean-zero series (the c0 term is dropped);
  // the constant of integration is chosen so the result vanishes at 0
  TrigSeries antiderivative_periodic() const {
    TrigSeries s;
    s.ab.resize(ab.size());
    for (size_t k = 1; k <= ab.size(); ++k) {
      double w = kTwoPi * double(k);
      s.ab[k - 1] = {-ab[k - 1].second / w, ab[k - 1].first / w};
    }
    s.c0 = -s.eval(0.0);
    return s;
  }

  // Least-squares-free fit from uniform samples (plain DFT truncation).
  static TrigSeries fit(const std::vector<double>& samples, int modes) {
    int n = int(samples.size());
    std::vector<std::complex<double>> d(samples.begin(), samples.end());
    fft(d, false);
    TrigSeries s;
    s.c0 = d[0].real() / n;
    modes = std::min(modes, n / 2 - 1);
    s.ab.resize(size_t(modes));
    for (int k = 1; k <= modes; ++k) {
      s.ab[size_t(k) - 1] = {2.0 * d[size_t(k)].real() / n,
                             -2.0 * d[size_t(k)].imag() / n};
    }
    return s;
  }
};

// Complex dilatation samples on the torus C / (Z + sigma Z), sampled on the
// N x N parameter grid (x, y) in [0,1)^2 with z = x + sigma y.
struct BeltramiGrid {
  int n = 0;
  std::complex<double> sigma{0.0, 1.0};
  std::vector<std::complex<double>> mu;  // row-major, mu[y_index * n + x_index]
  double sup_mu = 0.0;

  static BeltramiGrid constant(std::complex<double> c, int n) {
    BeltramiGrid g;
    g.n = n;
    g.mu.assign(size_t(n) * size_t(n), c);
    g.sup_mu = std::abs(c);
    return g;
  }
};

struct ModulusResult {
  std::complex<double> tau{0.0, 1.0};
  double residual = 0.0;
  int iterations = 0;
  int grid = 0;
  double sup_mu = 0.0;
  bool converged = false;
};

// Solve d-bar Phi = mu dPhi with Phi(z+1) = Phi(z) + 1 and
// Phi(z+sigma) = Phi(z) + tau via the ansatz Phi = alpha z + beta conj(z) + u,
// u doubly periodic with zero mean.  Fixed-point iteration in Fourier space:
//   w <- mu (alpha + v);  beta <- mean w;  alpha <- 1 - beta;
//   v <- B(w - mean w),
// where B = d o dbar^{-1} is the unit-modulus Fourier multiplier
// -(n - m conj(sigma)) / (n - m sigma) on the mode e^{2 pi i (mx + ny)}.
// On the square lattice (sigma = i) this is exactly the classical scheme and
// tau = i (alpha - beta).
struct SolveState {
  std::vector<std::complex<double>> v;  // du field, reusable across nearby solves
};

inline ModulusResult solve_torus(const BeltramiGrid& grid, double tol = 1e-11,
                                 int max_iter = 0,
                                 double dilatation_guard = 0.95,
                                 double alias_threshold = 1e-5,
                                 SolveState* state = nullptr) {
  const int n = grid.n;
  if (n < 4 || (n & (n - 1)) != 0)
    throw Error("solve_torus: grid must be a power of two, >= 4");
  const std::complex<double> sigma = grid.sigma;
  if (sigma.imag() == 0.0) throw Error("solve_torus: Im sigma must be nonzero");

  double sup = 0.0;
  for (const auto& m : grid.mu) sup = std::max(sup, std::abs(m));
  if (sup >= dilatation_guard) throw DilatationTooLarge(sup);

  if (max_iter <= 0) {
    double rate = std::max(sup, 0.05);
    max_iter = int(std::ceil(std::log(std::max(tol, 1e-15)) / std::log(rate))) * 4 + 64;
    max_iter = std::min(max_iter, 80000);
  }

  const size_t total = size_t(n) * size_t(n);
  // multiplier table
  std::vector<std::complex<double>> symbol(total);
  for (int l = 0; l < n; ++l) {
    int freq_n = l <= n / 2 ? l : l - n;
    for (int j = 0; j < n; ++j) {
      int freq_m = j <= n / 2 ? j : j - n;
      if (freq_m == 0 && freq_n == 0) {
        symbol[size_t(l) * n + j] = 0.0;
        continue;
      }
      std::complex<double> num = double(freq_n) - double(freq_m) * std::conj(sigma);
      std::complex<double> den = double(freq_n) - double(freq_m) * sigma;
      symbol[size_t(l) * n + j] = -num / den;
    }
  }

  std::vector<std::complex<double>> v(total, 0.0), w(total), vprev(total);
  if (state && state->v.size() == total) v = state->v;
  std::complex<double> alpha(1.0, 0.0), beta(0.0, 0.0);
  int it = 0;
  double delta = 1e300;
  double rate_estimate = sup;
  double prev_delta = 0.0;
  for (; it < max_iter; ++it) {
    for (size_t i = 0; i < total; ++i) w[i] = grid.mu[i] * (alpha + v[i]);
    fft2(w, n, false);
    std::complex<double> beta_new = w[0] / double(total);
    w[0] = 0.0;
    for (size_t i = 0; i < total; ++i) w[i] *= symbol[i];
    std::swap(v, vprev);
    v = w;
    fft2(v, n, true);
    std::complex<double> alpha_new = 1.0 - beta_new;
    double d2 = std::norm(beta_new - beta);
    for (size_t i = 0; i < total; ++i) d2 += std::norm(v[i] - vprev[i]) / double(total);
    prev_delta = delta;
    delta = std::sqrt(d2);
    alpha = alpha_new;
    beta = beta_new;
    if (delta < tol) {
      ++it;
      break;
    }
    if (prev_delta > 0.0 && delta > 0.0) rate_estimate = delta / prev_delta;
  }

  ModulusResult res;
  res.iterations = it;
  res.grid = n;
  res.sup_mu = sup;
  res.converged = delta < tol;
  res.tau = sigma - beta * (sigma - std::conj(sigma));
  if (!res.converged)
    throw NoConvergence("solve_torus: contraction stalled at rate ~" +
                            std::to_string(rate_estimate) + " after " +
                            std::to_string(it) + " iterations",
                        rate_estimate);

  // a-posteriori residual ||beta + dbar u - mu (alpha + du)||_2 and the
  // spectral tail of v (aliasing indicator)
  std::vector<std::complex<double>> vhat(v);
  fft2(vhat, n, false);
  double tail = 0.0, energy = 0.0;
  std::vector<std::complex<double>> dbar_u(total);
  for (int l = 0; l < n; ++l) {
    int freq_n = l <= n / 2 ? l : l - n;
    for (int j = 0; j < n; ++j) {
      int freq_m = j <= n / 2 ? j : j - n;
      size_t i = size_t(l) * n + j;
      double e = std::norm(vhat[i]);
      energy += e;
      if (std::abs(freq_m) > n / 4 || std::abs(freq_n) > n / 4) tail += e;
      dbar_u[i] = (freq_m == 0 && freq_n == 0) ? 0.0 : vhat[i] / symbol[i];
    }
  }
  fft2(dbar_u, n, true);
  double r2 = 0.0;
  for (size_t i = 0; i < total; ++i)
    r2 += std::norm(beta + dbar_u[i] - grid.mu[i] * (alpha + v[i]));
  res.residual = std::sqrt(r2 / double(total));
  // aliasing: meaningful only when v itself is above the roundoff floor
  double v_rms = std::sqrt(energy) / double(total);
  if (state) state->v = v;
  if (v_rms > std::max(100.0 * tol, 1e-12) && tail / energy > alias_threshold)
    throw AliasingDetected(tail / energy, n);
  return res;
}

// Boundary data of a glued torus: a 1-periodic curve given as the graph
// Gamma(x) = x + i g0(x), an analytic gluing lift G = glue + omega, and the
// polarity flag (conjugated problems carry Im sigma < 0).
struct GluedTorusProblem {
  TrigSeries g0;          // graph of the boundary curve; zero for the real axis
  FourierLift glue;       // F
  std::complex<double> omega{0.0, 0.0};  // additive shift, G = F + omega
  bool conjugated = false;

  std::complex<double> gamma(double x) const {
    return {x, g0.eval(x)};
  }
  std::complex<double> glued(double x) const {
    return glue.eval(gamma(x)) + omega;
  }
};

// Quasiconformal interpolation between Gamma and G(Gamma), parametrized on
// the unit square.  Fibers are vertical segments of the band between the two
// graphs; the horizontal drift from Re Gamma(x) to Re G(Gamma(x)) rides the
// same schedule w(x,y), and w is an exponential schedule matched to |G'| so
// the map continues C^1-smoothly across the gluing seam (exactly so when the
// boundary is the real axis; for rotations it reduces to the plain linear
// interpolation psi = x + y (alpha + omega)).
class InterpolationMap {
 public:
  enum class Schedule { linear, derivative_matched };

  InterpolationMap(GluedTorusProblem problem,
                   Schedule schedule = Schedule::derivative_matched)
      : p_(std::move(problem)), schedule_(schedule) {
    build_graphs();
    probe_jacobian();
  }

  const GluedTorusProblem& problem() const { return p_; }

  // psi(x, y) on the unit square
  std::complex<double> eval(double x, double y) const {
    Point pt = locate(x, y);
    return pt.value;
  }

  // analytic y-derivative of psi
  std::complex<double> eval_dy(double x, double y) const {
    Point pt = locate(x, y);
    return pt.dy;
  }

  double min_jacobian() const { return min_jac_; }
  double min_jacobian_x() const { return min_jac_x_; }
  double min_jacobian_y() const { return min_jac_y_; }
  double graph_fit_residual() const { return fit_residual_; }

  // Natural lattice of the glued torus in band coordinates: the mean drift
  // of the gluing in the arclike parameter u plus i times the conformal
  // height 1/C of the band, C = integral of 1/thickness.  For a rigid
  // gluing by alpha + omega this is exactly alpha + omega.
  std::complex<double> lattice_sigma() const { return sigma_; }

 private:
  struct Point {
    std::complex<double> value;
    std::complex<double> dy;
  };

  double g1_eval(double X, int order = 0) const {
    if (flat_top_) return order == 0 ? p_.omega.imag() : 0.0;
    return g1_.eval(X, order);
  }

  double thickness(double X) const { return g1_eval(X) - p_.g0.eval(X); }

  // u(X) = X + uper(X): the band-conformal circle coordinate with
  // du/dX = (1/m(X)) / C
  double u_of_X(double X) const { return X + uper_.eval(X); }
  double du_dX(double X) const { return 1.0 + uper_.eval(X, 1); }

  double X_of_u(double u) const {
    double X = u;  // uper is zero-mean, so u is already a good guess
    for (int i = 0; i < 60; ++i) {
      double r = u_of_X(X) - u;
      if (std::abs(r) < 1e-13) return X;
      X -= r / du_dX(X);
    }
    throw NoConvergence("interpolation: inversion of the band coordinate");
  }

  // fiber data shared by value and derivative at fixed x
  struct Fiber {
    double X0, u1;
    std::complex<double> gz;
    double lambda;  // schedule rate
  };

  Fiber fiber(double x) const {
    Fiber fb;
    fb.X0 = X_of_u(x);
    std::complex<double> z0(fb.X0, p_.g0.eval(fb.X0));
    fb.gz = p_.glue.eval(z0) + p_.omega;
    fb.u1 = u_of_X(fb.gz.real());
    if (schedule_ == Schedule::linear) {
      fb.lambda = 1.0;
      return fb;
    }
    // C^1 seam matching: the y-derivative ratio across the seam should be
    // G'(z0); lambda is the modulus of the required rate
    std::complex<double> gp = p_.glue.eval(z0, 1);
    std::complex<double> pw0 = fiber_direction(fb, 0.0);
    std::complex<double> pw1 = fiber_direction(fb, 1.0);
    double lam = std::abs(gp * pw0 / pw1);
    fb.lambda = std::clamp(lam, 0.2, 5.0);
    return fb;
  }

  // d psi / dw along the fiber at blend parameter w
  std::complex<double> fiber_direction(const Fiber& fb, double w) const {
    double x = u_of_X(fb.X0);
    double upt = (1.0 - w) * x + w * fb.u1;
    double X = X_of_u(upt);
    double g0v = p_.g0.eval(X), g0d = p_.g0.eval(X, 1);
    double g1v = g1_eval(X), g1d = g1_eval(X, 1);
    std::complex<double> bX(1.0, (1.0 - w) * g0d + w * g1d);
    std::complex<double> bw(0.0, g1v - g0v);
    return (fb.u1 - x) / du_dX(X) * bX + bw;
  }

  void schedule_w(double lambda, double y, double& w, double& wy) const {
    double r = lambda - 1.0;
    if (std::abs(r) < 1e-9) {
      w = y + 0.5 * (y * y - y) * r;
      wy = 1.0 + (y - 0.5) * r;
      return;
    }
    double ly = std::pow(lambda, y);
    w = (ly - 1.0) / r;
    wy = ly * std::log(lambda) / r;
  }

  Point locate(double x, double y) const {
    Fiber fb = fiber(x);
    double w, wy;
    schedule_w(fb.lambda, y, w, wy);
    double upt = (1.0 - w) * x + w * fb.u1;
    double X = X_of_u(upt);
    double g0v = p_.g0.eval(X), g0d = p_.g0.eval(X, 1);
    double g1v = g1_eval(X), g1d = g1_eval(X, 1);
    Point pt;
    pt.value = {X, (1.0 - w) * g0v + w * g1v};
    std::complex<double> bX(1.0, (1.0 - w) * g0d + w * g1d);
    std::complex<double> bw(0.0, g1v - g0v);
    pt.dy = ((fb.u1 - x) / du_dX(X) * bX + bw) * wy;
    return pt;
  }

  // Im of the glued curve as a function of its Re, by Newton on
  // Re(G(Gamma(t))) = X; the real part is strictly increasing for valid
  // problems.
  double glued_graph(double X, double guess) const {
    double t = guess;
    for (int i = 0; i < 80; ++i) {
      std::complex<double> gamma_t(t, p_.g0.eval(t));
      std::complex<double> g = p_.glue.eval(gamma_t) + p_.omega;
      double f = g.real() - X;
      if (std::abs(f) < 1e-13) return t;
      std::complex<double> gp =
          p_.glue.eval(gamma_t, 1) * std::complex<double>(1.0, p_.g0.eval(t, 1));
      double step = f / gp.real();
      t -= std::clamp(step, -0.45, 0.45);
    }
    throw NoConvergence("interpolation: inversion of the glued graph stalled");
  }

  void build_graphs() {
    flat_top_ = p_.g0.is_zero();
    const int m = 4096;
    if (!flat_top_) {
      // fit the image curve as a graph over Re on a uniform grid, inverting
      // the parametrization by Newton continuation
      std::complex<double> base = p_.glue.eval(p_.gamma(0.0)) + p_.omega;
      double shift = base.real();
      std::vector<double> samples(size_t(m), 0.0);
      double t = 0.0;
      fit_residual_ = 0.0;
      for (int j = 0; j < m; ++j) {
        double X = shift + double(j) / m;
        t = glued_graph(X, t);
        std::complex<double> gamma_t(t, p_.g0.eval(t));
        samples[size_t(j)] = (p_.glue.eval(gamma_t) + p_.omega).imag();
      }
      TrigSeries fit = TrigSeries::fit(samples, 192);
      // re-anchor from the shifted grid to x = 0
      std::vector<double> re(size_t(m), 0.0);
      for (int j = 0; j < m; ++j)
        re[size_t(j)] = fit.eval(double(j) / m - shift);
      g1_ = TrigSeries::fit(re, 192);
      // fit residual against fresh Newton samples
      t = 0.0;
      for (int j = 0; j < 64; ++j) {
        double X = shift + double(j) / 64.0 + 0.37 / m;
        t = glued_graph(X, t);
        std::complex<double> gamma_t(t, p_.g0.eval(t));
        double want = (p_.glue.eval(gamma_t) + p_.omega).imag();
        fit_residual_ = std::max(fit_residual_, std::abs(g1_.eval(X) - want));
      }
    }

    // band-conformal coordinate u from the thickness profile
    std::vector<double> inv(size_t(m), 0.0);
    double bad = 0.0;
    for (int j = 0; j < m; ++j) {
      double X = double(j) / m;
      double th = thickness(X);
      if (p_.conjugated ? th >= 0.0 : th <= 0.0) bad = X;
      inv[size_t(j)] = 1.0 / th;
    }
    if (bad != 0.0)
      throw NonInjectiveInterpolation(0.0, bad, 0.5);
    TrigSeries invfit = TrigSeries::fit(inv, 192);
    c_total_ = invfit.c0;
    TrigSeries scaled = invfit;
    scaled.c0 = 0.0;
    for (auto& abk : scaled.ab) {
      abk.first /= c_total_;
      abk.second /= c_total_;
    }
    uper_ = scaled.antiderivative_periodic();

    // mean drift of the gluing in the u coordinate
    std::complex<double> drift = 0.0;
    const int ns = 256;
    for (int j = 0; j < ns; ++j) {
      Fiber fb = fiber_basic(double(j) / ns);
      drift += std::complex<double>(fb.u1 - double(j) / ns, 0.0);
    }
    sigma_ = drift / double(ns) + std::complex<double>(0.0, 1.0 / c_total_);
  }

  // fiber endpoints without the schedule rate (used during construction)
  Fiber fiber_basic(double x) const {
    Fiber fb;
    fb.X0 = X_of_u(x);
    std::complex<double> z0(fb.X0, p_.g0.eval(fb.X0));
    fb.gz = p_.glue.eval(z0) + p_.omega;
    fb.u1 = u_of_X(fb.gz.real());
    fb.lambda = 1.0;
    return fb;
  }

  void probe_jacobian() {
    const int nx = 96, ny = 24;
    min_jac_ = 1e300;
    for (int l = 0; l <= ny; ++l) {
      double y = double(l) / ny;
      for (int j = 0; j < nx; ++j) {
        double x = double(j) / nx;
        std::complex<double> dy = eval_dy(x, y);
        // x-derivative by centered difference of the analytic map
        double hstep = 1e-6;
        std::complex<double> dx =
            (eval(x + hstep, y) - eval(x - hstep, y)) / (2.0 * hstep);
        double jac = std::imag(std::conj(dx) * dy);
        if (p_.conjugated) jac = -jac;
        if (jac < min_jac_) {
          min_jac_ = jac;
          min_jac_x_ = x;
          min_jac_y_ = y;
        }
      }
    }
    if (min_jac_ <= 0.0)
      throw NonInjectiveInterpolation(min_jac_, min_jac_x_, min_jac_y_);
  }

  GluedTorusProblem p_;
  Schedule schedule_;
  bool flat_top_ = true;
  TrigSeries g1_;    // graph of the glued curve (unused when flat_top_)
  TrigSeries uper_;  // periodic part of the band coordinate u(X) = X + uper
  double c_total_ = 1.0;
  double fit_residual_ = 0.0;
  std::complex<double> sigma_{0.0, 1.0};
  double min_jac_ = 0.0, min_jac_x_ = 0.0, min_jac_y_ = 0.0;
};

inline InterpolationMap interpolation_map(
    GluedTorusProblem problem,
    InterpolationMap::Schedule schedule = InterpolationMap::Schedule::derivative_matched) {
  return InterpolationMap(std::move(problem), schedule);
}

// Sample the dilatation of psi on an N x N grid over the (1, sigma) lattice.
// x-derivatives are spectral (the rows are analytic and 1-periodic), the
// y-derivative is analytic.
inline BeltramiGrid beltrami_of(const InterpolationMap& psi, int n,
                                std::complex<double> sigma = {0.0, 1.0},
                                double dilatation_guard = 0.95) {
  if (n < 4 || (n & (n - 1)) != 0)
    throw Error("beltrami_of: grid must be a power of two, >= 4");
  BeltramiGrid g;
  g.n = n;
  g.sigma = sigma;
  g.mu.resize(size_t(n) * size_t(n));
  std::vector<std::complex<double>> row(size_t(n), 0.0), rowhat(size_t(n), 0.0);
  double min_jac = 1e300, at_x = 0, at_y = 0;
  for (int l = 0; l < n; ++l) {
    double y = double(l) / n;
    for (int j = 0; j < n; ++j) row[size_t(j)] = psi.eval(double(j) / n, y);
    // psi - x is 1-periodic in x: differentiate spectrally
    rowhat = row;
    for (int j = 0; j < n; ++j) rowhat[size_t(j)] -= double(j) / n;
    fft(rowhat, false);
    for (int j = 0; j < n; ++j) {
      int m = j <= n / 2 ? j : j - n;
      if (m == n / 2) m = 0;  // drop the unmatched Nyquist mode
      rowhat[size_t(j)] *= std::complex<double>(0.0, kTwoPi * m);
    }
    fft(rowhat, true);
    for (int j = 0; j < n; ++j) {
      double x = double(j) / n;
      std::complex<double> dx = rowhat[size_t(j)] + 1.0;
      std::complex<double> dy = psi.eval_dy(x, y);
      double jac = std::imag(std::conj(dx) * dy);
      double swap_sign = sigma.imag() < 0.0 ? -1.0 : 1.0;
      if (jac * swap_sign < min_jac) {
        min_jac = jac * swap_sign;
        at_x = x;
        at_y = y;
      }
      std::complex<double> num = sigma * dx - dy;
      std::complex<double> den = dy - std::conj(sigma) * dx;
      g.mu[size_t(l) * n + j] = num / den;
    }
  }
  if (min_jac <= 0.0) throw NonInjectiveInterpolation(min_jac, at_x, at_y);
  for (const auto& m : g.mu) g.sup_mu = std::max(g.sup_mu, std::abs(m));
  if (g.sup_mu >= dilatation_guard) throw DilatationTooLarge(g.sup_mu);
  return g;
}

struct CrotOptions {
  int grid = 128;
  double tol = 1e-11;
  double dilatation_guard = 0.9995;  // the omega -> 0 chain runs mu close to 1
  int max_grid = 512;
  double alias_threshold = 3e-5;
  InterpolationMap::Schedule schedule = InterpolationMap::Schedule::derivative_matched;
};

// tau_F(omega): modulus of the complex torus obtained by gluing the annulus
// between R/Z and its (F + omega)-image, with generators marked by R/Z and
// the segment from a basepoint to its image.
inline ModulusResult crot_omega(const FourierLift& f, std::complex<double> omega,
                                const CrotOptions& opt = {},
                                SolveState* state = nullptr) {
  if (!(omega.imag() > 0.0))
    throw Error("crot_omega: Im omega must be positive");
  GluedTorusProblem prob;
  prob.glue = f;
  prob.omega = omega;
  InterpolationMap psi(prob, opt.schedule);
  std::complex<double> sigma = psi.lattice_sigma();
  int n = opt.grid;
  for (;;) {
    try {
      BeltramiGrid mu = beltrami_of(psi, n, sigma, opt.dilatation_guard);
      ModulusResult res = solve_torus(mu, opt.tol, 0, opt.dilatation_guard,
                                      opt.alias_threshold, state);
      if (!(res.tau.imag() > 0.0))
        throw Error("crot_omega: computed modulus left the upper half-plane");
      return res;
    } catch (const AliasingDetected&) {
      if (n >= opt.max_grid) throw;
      n *= 2;
      if (state) state->v.clear();
    }
  }
}

// Weighted least-squares polynomial extrapolation of tau(i eps) to eps = 0.
// Model: tau ~ tau0 + c1 eps + ... + c_order eps^order; weights favour the
// samples with small reported residuals.
struct OmegaLimit {
  std::complex<double> tau{0.0, 0.0};
  double fit_residual = 0.0;
  std::vector<std::pair<double, std::complex<double>>> samples;  // (eps, tau)
};

inline OmegaLimit richardson_crot_omega(const FourierLift& f, int k_lo = 4,
                                        int k_hi = 10, int order = 2,
                                        const CrotOptions& opt = {}) {
  OmegaLimit out;
  std::vector<double> weights;
  SolveState chain;  // warm-start each solve from the previous omega
  for (int k = k_lo; k <= k_hi; ++k) {
    double eps = std::ldexp(1.0, -k);
    ModulusResult r = crot_omega(f, {0.0, eps}, opt, &chain);
    out.samples.emplace_back(eps, r.tau);
    weights.push_back(1.0 / (r.residual + 1e-12));
  }
  int m = order + 1;
  int npts = int(out.samples.size());
  if (npts < m) throw Error("richardson_crot_omega: not enough samples");
  // normal equations for the weighted LS fit in powers of eps
  std::vector<double> a(size_t(m) * size_t(m), 0.0);
  std::vector<std::complex<double>> rhs(size_t(m), 0.0);
  for (int s = 0; s < npts; ++s) {
    double eps = out.samples[size_t(s)].first;
    double wt = weights[size_t(s)];
    std::vector<double> pow_eps(size_t(m), 1.0);
    for (int i = 1; i < m; ++i) pow_eps[size_t(i)] = pow_eps[size_t(i) - 1] * eps;
    for (int i = 0; i < m; ++i) {
      rhs[size_t(i)] += wt * pow_eps[size_t(i)] * out.samples[size_t(s)].second;
      for (int j = 0; j < m; ++j)
        a[size_t(i) * m + j] += wt * pow_eps[size_t(i)] * pow_eps[size_t(j)];
    }
  }
  // Gaussian elimination (m <= 4)
  std::vector<std::complex<double>> coef(rhs);
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r2 = col + 1; r2 < m; ++r2)
      if (std::abs(a[size_t(r2) * m + col]) > std::abs(a[size_t(piv) * m + col]))
        piv = r2;
    for (int c2 = 0; c2 < m; ++c2) std::swap(a[size_t(col) * m + c2], a[size_t(piv) * m + c2]);
    std::swap(coef[size_t(col)], coef[size_t(piv)]);
    for (int r2 = col + 1; r2 < m; ++r2) {
      double factor = a[size_t(r2) * m + col] / a[size_t(col) * m + col];
      for (int c2 = col; c2 < m; ++c2)
        a[size_t(r2) * m + c2] -= factor * a[size_t(col) * m + c2];
      coef[size_t(r2)] -= factor * coef[size_t(col)];
    }
  }
  std::vector<std::complex<double>> sol(size_t(m), 0.0);
  for (int r2 = m - 1; r2 >= 0; --r2) {
    std::complex<double> s = coef[size_t(r2)];
    for (int c2 = r2 + 1; c2 < m; ++c2) s -= a[size_t(r2) * m + c2] * sol[size_t(c2)];
    sol[size_t(r2)] = s / a[size_t(r2) * m + r2];
  }
  out.tau = sol[0];
  // rms misfit of the model at the samples
  double misfit = 0.0;
  for (int s = 0; s < npts; ++s) {
    double eps = out.samples[size_t(s)].first;
    std::complex<double> model = 0.0;
    double pe = 1.0;
    for (int i = 0; i < m; ++i) {
      model += sol[size_t(i)] * pe;
      pe *= eps;
    }
    misfit += std::norm(model - out.samples[size_t(s)].second);
  }
  out.fit_residual = std::sqrt(misfit / npts);
  return out;
}

}  // namespace crn
