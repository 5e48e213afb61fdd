#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "crn/errors.hpp"
#include "crn/rational.hpp"

namespace crn {

// Continued fraction expansion alpha = [k0, k1, ...] of a number in (0,1),
// i.e. alpha = 1/(k0 + 1/(k1 + ...)).  For rational input the expansion is
// finite and `terminated` is set.
struct CFExpansion {
  std::vector<std::int64_t> terms;
  bool terminated = false;

  int depth() const { return int(terms.size()); }
};

// Exact Gauss-map steps on a rational in (0,1).  Every term k_j >= 1.
inline CFExpansion cf_of(const Rational& x, int depth = 60) {
  if (x.sign() <= 0 || x >= Rational(1))
    throw Error("cf_of: argument must lie in (0,1)");
  CFExpansion cf;
  BigUInt p = x.num().magnitude();  // current tail = p/q in (0,1)
  BigUInt q = x.den();
  while (int(cf.terms.size()) < depth) {
    if (p.is_zero()) {
      cf.terminated = true;
      break;
    }
    BigUInt rem;
    BigUInt k = BigUInt::divmod(q, p, &rem);  // 1/tail = k + rem/p
    cf.terms.push_back(std::int64_t(k.to_u64()));
    q = p;
    p = rem;
  }
  if (p.is_zero()) cf.terminated = true;
  return cf;
}

// A double is a dyadic rational; its expansion agrees with the underlying
// irrational only while q_n^2 stays below ~2^53.  High-precision inputs go
// through the Rational overload (see golden_mean()).
inline CFExpansion cf_of(double x, int depth = 60) {
  return cf_of(Rational::from_double(x), depth);
}

// Convergents p_0/q_0 = 0/1, p_1/q_1 = 1/k0, ... of a continued fraction;
// returns n+1 entries ending at p_n/q_n.  All entries are exact and reduced
// automatically (consecutive convergents are coprime).
inline std::vector<Rational> convergents(const CFExpansion& cf, int n) {
  if (n > cf.depth())
    throw DepthExceeded("convergents: requested " + std::to_string(n) +
                        " but expansion has " + std::to_string(cf.depth()) +
                        " terms");
  std::vector<Rational> out;
  out.reserve(size_t(n) + 1);
  BigInt p_prev(1), q_prev(0);  // p_{-1}/q_{-1}
  BigInt p(0), q(1);            // p_0/q_0
  out.emplace_back(p, q.magnitude());
  for (int j = 0; j < n; ++j) {
    BigInt k(cf.terms[size_t(j)]);
    BigInt p_next = k * p + p_prev;
    BigInt q_next = k * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    out.emplace_back(p, q.magnitude());
  }
  return out;
}

struct BrjunoPartial {
  double value = 0.0;        // sum of the first n terms
  double tail_weight = 0.0;  // product alpha_0 ... alpha_{n-1}
};

// Partial Brjuno sum  sum_{j<n} alpha_{-1} alpha_0 ... alpha_{j-1} log(1/alpha_j)
// with alpha_{-1} = 1 and alpha_j the exact Gauss-map tails of alpha.
inline BrjunoPartial brjuno_partial(const Rational& alpha, int n) {
  if (alpha.sign() <= 0 || alpha >= Rational(1))
    throw Error("brjuno_partial: argument must lie in (0,1)");
  BrjunoPartial out;
  out.tail_weight = 1.0;
  BigUInt p = alpha.num().magnitude();
  BigUInt q = alpha.den();
  double product = 1.0;  // alpha_{-1} ... alpha_{j-1}
  for (int j = 0; j < n; ++j) {
    // alpha_j = p/q to double precision; the exact division keeps the tails
    // honest far past where a plain double iteration would have decayed.
    double aj = p.is_zero() ? 0.0 : Rational(BigInt(p), q).to_double();
    if (aj < 1e-15)
      throw PrecisionLoss("brjuno_partial: tail alpha_" + std::to_string(j) +
                              " underflowed",
                          j);
    out.value += product * std::log(1.0 / aj);
    product *= aj;
    BigUInt rem;
    BigUInt::divmod(q, p, &rem);  // next tail = rem / p
    q = p;
    p = rem;
  }
  out.tail_weight = product;
  return out;
}

inline BrjunoPartial brjuno_partial(double alpha, int n) {
  return brjuno_partial(Rational::from_double(alpha), n);
}

// Smallest m with 0 < q_m alpha - p_m < return_gap, plus q_m itself.
// Throws NotFound if the scan runs off the end of the expansion (rational
// alpha or alpha too close to one) or past the depth cap.
struct ReturnIndex {
  int m = 0;
  std::int64_t q_m = 0;
};

inline ReturnIndex n_of_alpha(const Rational& alpha, double return_gap = 0.01,
                              int depth = 60) {
  if (alpha.sign() <= 0 || alpha >= Rational(1))
    throw Error("n_of_alpha: argument must lie in (0,1)");
  CFExpansion cf = cf_of(alpha, depth);
  std::vector<Rational> conv = convergents(cf, cf.depth());
  Rational gap = Rational::from_double(return_gap);
  for (int m = 0; m < int(conv.size()); ++m) {
    Rational err = Rational(BigInt(conv[size_t(m)].den()), BigUInt(1)) * alpha -
                   Rational(conv[size_t(m)].num(), BigUInt(1));
    if (err.sign() > 0 && err < gap) {
      ReturnIndex r;
      r.m = m;
      r.q_m = BigInt(conv[size_t(m)].den()).to_i64();
      return r;
    }
    if (err.is_zero()) break;  // expansion ended exactly at alpha
  }
  throw NotFound("n_of_alpha: no index m with 0 < q_m a - p_m < " +
                 std::to_string(return_gap) + " within depth " +
                 std::to_string(depth));
}

inline ReturnIndex n_of_alpha(double alpha, double return_gap = 0.01,
                              int depth = 60) {
  return n_of_alpha(Rational::from_double(alpha), return_gap, depth);
}

}  // namespace crn
