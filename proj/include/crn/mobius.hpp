#pragma once

#include <complex>
#include <vector>

#include "crn/contfrac.hpp"
#include "crn/errors.hpp"
#include "crn/rational.hpp"

namespace crn {

using Complex = std::complex<double>;

// Analytic extension G_k(tau) = 1/tau - k of the Gauss-map branch.
inline Complex gauss_branch(std::int64_t k, Complex tau) {
  if (tau == Complex(0.0, 0.0)) throw PoleAtZero();
  return 1.0 / tau - double(k);
}

// Integer Moebius transformation tau -> (a tau + b)/(c tau + d), ad - bc = +-1.
struct MobiusInt {
  BigInt a, b, c, d;

  MobiusInt() : a(1), b(0), c(0), d(1) {}
  MobiusInt(BigInt a_, BigInt b_, BigInt c_, BigInt d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (det() != 1 && det() != -1)
      throw Error("MobiusInt: determinant must be +-1, got " +
                  (a * d - b * c).to_string());
  }
  MobiusInt(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_)
      : MobiusInt(BigInt(a_), BigInt(b_), BigInt(c_), BigInt(d_)) {}

  std::int64_t det() const {
    BigInt d2 = a * d - b * c;
    return d2.to_i64();
  }

  Complex apply(Complex tau) const {
    Complex den = c.to_double() * tau + d.to_double();
    if (den == Complex(0.0, 0.0)) throw ImageAtInfinity();
    return (a.to_double() * tau + b.to_double()) / den;
  }

  // Exact evaluation at a rational point.  Throws ImageAtInfinity when the
  // image is the cusp.
  Rational apply(const Rational& x) const {
    BigInt num = a * x.num() + b * BigInt(x.den());
    BigInt den = c * x.num() + d * BigInt(x.den());
    if (den.is_zero()) throw ImageAtInfinity();
    if (den.negative()) {
      num = -num;
      den = -den;
    }
    return Rational(num, den.magnitude());
  }

  friend MobiusInt operator*(const MobiusInt& m, const MobiusInt& n) {
    return MobiusInt(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                     m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d);
  }
};

// T_{p/q} = (-q_{m+1} tau + p_{m+1}) / (q_m tau - p_m) from the convergents
// of p/q; factors as G_{k_m} o ... o G_{k_0}.
inline MobiusInt T_pq(const Rational& pq, int m) {
  CFExpansion cf = cf_of(pq);
  if (m + 1 > cf.depth())
    throw DepthExceeded("T_pq: continued fraction of " + pq.to_string() +
                        " has only " + std::to_string(cf.depth()) +
                        " terms, need m+1 = " + std::to_string(m + 1));
  std::vector<Rational> conv = convergents(cf, m + 1);
  const Rational& cm = conv[size_t(m)];
  const Rational& cm1 = conv[size_t(m) + 1];
  return MobiusInt(-BigInt(cm1.den()), cm1.num(), BigInt(cm.den()), -cm.num());
}

// Disc in the upper half-plane of diameter eps, tangent to R at r.
// Membership is the algebraic form |z - r|^2 <= eps * Im z, which is exact
// at the tangency point.
struct TangentDisc {
  double r = 0.0;
  double eps = 0.0;

  TangentDisc() = default;
  TangentDisc(double r_, double eps_) : r(r_), eps(eps_) {
    if (eps_ <= 0.0) throw Error("TangentDisc: diameter must be positive");
  }

  bool contains(Complex z, double slack = 0.0) const {
    return std::norm(z - r) <= eps * z.imag() + slack;
  }
  // Positive inside, negative outside.
  double margin(Complex z) const { return eps * z.imag() - std::norm(z - r); }

  Complex apex() const { return Complex(r, eps); }
};

// Exact tangent disc D_{eps * l^{-2}, k/l}: tangency point k/l (reduced,
// l >= 1) and unit diameter eps, so the actual diameter is eps / l^2.
struct RationalDisc {
  Rational root;
  double eps_unit = 0.0;

  RationalDisc() = default;
  RationalDisc(Rational r, double eps) : root(std::move(r)), eps_unit(eps) {
    if (eps <= 0.0) throw Error("RationalDisc: diameter must be positive");
  }

  double denominator() const { return root.den().to_double(); }
  double diameter() const {
    double l = denominator();
    return eps_unit / (l * l);
  }
  TangentDisc numeric() const { return TangentDisc(root.to_double(), diameter()); }
};

// Image of D_{eps l^{-2}, k/l} under an integer Moebius map: the disc
// D_{eps l~^{-2}, k~/l~} at the image point, computed exactly.
inline RationalDisc disc_image(const MobiusInt& M, const RationalDisc& D) {
  Rational image = M.apply(D.root);  // throws ImageAtInfinity when c k + d l = 0
  return RationalDisc(image, D.eps_unit);
}

// Smallest eps such that D_{eps, r} contains all the points: the size of a
// bubble sampled at pts.
inline double disc_size(double r, const std::vector<Complex>& pts) {
  double eps = 0.0;
  for (Complex z : pts) {
    if (!(z.imag() > 0.0)) throw NonPositiveImaginaryPart();
    eps = std::max(eps, std::norm(z - r) / z.imag());
  }
  return eps;
}

}  // namespace crn
