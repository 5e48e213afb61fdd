#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "crn/errors.hpp"

namespace crn {

// Unsigned big integer, base 2^32 limbs, little endian.  Schoolbook
// arithmetic: the numbers in this project stay below a few hundred digits
// (continued fractions to depth 60, golden mean at 50+ digits), so there is
// no need for anything asymptotically clever.
class BigUInt {
 public:
  BigUInt() = default;
  BigUInt(std::uint64_t v) {  // NOLINT: implicit by design
    if (v) limbs_.push_back(std::uint32_t(v & 0xffffffffu));
    if (v >> 32) limbs_.push_back(std::uint32_t(v >> 32));
  }

  bool is_zero() const { return limbs_.empty(); }

  static int cmp(const BigUInt& a, const BigUInt& b) {
    if (a.limbs_.size() != b.limbs_.size())
      return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (size_t i = a.limbs_.size(); i-- > 0;)
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    return 0;
  }

  friend bool operator==(const BigUInt& a, const BigUInt& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const BigUInt& a, const BigUInt& b) { return cmp(a, b) != 0; }
  friend bool operator<(const BigUInt& a, const BigUInt& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const BigUInt& a, const BigUInt& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const BigUInt& a, const BigUInt& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const BigUInt& a, const BigUInt& b) { return cmp(a, b) >= 0; }

  friend BigUInt operator+(const BigUInt& a, const BigUInt& b) {
    BigUInt r;
    const size_t n = std::max(a.limbs_.size(), b.limbs_.size());
    r.limbs_.resize(n);
    std::uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
      std::uint64_t s = carry;
      if (i < a.limbs_.size()) s += a.limbs_[i];
      if (i < b.limbs_.size()) s += b.limbs_[i];
      r.limbs_[i] = std::uint32_t(s & 0xffffffffu);
      carry = s >> 32;
    }
    if (carry) r.limbs_.push_back(std::uint32_t(carry));
    return r;
  }

  // Requires a >= b.
  friend BigUInt operator-(const BigUInt& a, const BigUInt& b) {
    BigUInt r;
    r.limbs_.resize(a.limbs_.size());
    std::int64_t borrow = 0;
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      std::int64_t s = std::int64_t(a.limbs_[i]) - borrow -
                       (i < b.limbs_.size() ? std::int64_t(b.limbs_[i]) : 0);
      borrow = 0;
      if (s < 0) {
        s += (std::int64_t(1) << 32);
        borrow = 1;
      }
      r.limbs_[i] = std::uint32_t(s);
    }
    if (borrow) throw Error("BigUInt: subtraction underflow");
    r.trim();
    return r;
  }

  friend BigUInt operator*(const BigUInt& a, const BigUInt& b) {
    if (a.is_zero() || b.is_zero()) return BigUInt();
    BigUInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      std::uint64_t carry = 0;
      for (size_t j = 0; j < b.limbs_.size(); ++j) {
        std::uint64_t cur = r.limbs_[i + j] +
                            std::uint64_t(a.limbs_[i]) * b.limbs_[j] + carry;
        r.limbs_[i + j] = std::uint32_t(cur & 0xffffffffu);
        carry = cur >> 32;
      }
      size_t k = i + b.limbs_.size();
      while (carry) {
        std::uint64_t cur = r.limbs_[k] + carry;
        r.limbs_[k] = std::uint32_t(cur & 0xffffffffu);
        carry = cur >> 32;
        ++k;
      }
    }
    r.trim();
    return r;
  }

  int bit_length() const {
    if (is_zero()) return 0;
    std::uint32_t top = limbs_.back();
    int bits = int(limbs_.size() - 1) * 32;
    while (top) {
      ++bits;
      top >>= 1;
    }
    return bits;
  }

  bool bit(int i) const {
    size_t limb = size_t(i) / 32;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 32)) & 1u;
  }

  BigUInt shifted_left(int bits) const {
    if (is_zero() || bits == 0) return bits == 0 ? *this : BigUInt();
    BigUInt r;
    int limb_shift = bits / 32, bit_shift = bits % 32;
    r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
      std::uint64_t v = std::uint64_t(limbs_[i]) << bit_shift;
      r.limbs_[i + limb_shift] |= std::uint32_t(v & 0xffffffffu);
      r.limbs_[i + limb_shift + 1] |= std::uint32_t(v >> 32);
    }
    r.trim();
    return r;
  }

  // Long division; returns quotient, stores remainder in *rem.
  static BigUInt divmod(const BigUInt& a, const BigUInt& b, BigUInt* rem) {
    if (b.is_zero()) throw Error("BigUInt: division by zero");
    if (cmp(a, b) < 0) {
      if (rem) *rem = a;
      return BigUInt();
    }
    BigUInt q, r;
    q.limbs_.assign(a.limbs_.size(), 0);
    for (int i = a.bit_length() - 1; i >= 0; --i) {
      r = r.shifted_left(1);
      if (a.bit(i)) {
        if (r.limbs_.empty()) r.limbs_.push_back(0);
        r.limbs_[0] |= 1u;
      }
      if (cmp(r, b) >= 0) {
        r = r - b;
        q.limbs_[size_t(i) / 32] |= (1u << (i % 32));
      }
    }
    q.trim();
    if (rem) *rem = r;
    return q;
  }

  friend BigUInt operator/(const BigUInt& a, const BigUInt& b) {
    return divmod(a, b, nullptr);
  }
  friend BigUInt operator%(const BigUInt& a, const BigUInt& b) {
    BigUInt r;
    divmod(a, b, &r);
    return r;
  }

  static BigUInt gcd(BigUInt a, BigUInt b) {
    while (!b.is_zero()) {
      BigUInt r = a % b;
      a = b;
      b = r;
    }
    return a;
  }

  static BigUInt pow10(int n) {
    BigUInt r(1), ten(10);
    for (int i = 0; i < n; ++i) r = r * ten;
    return r;
  }

  // Floor of the square root, by integer Newton iteration.
  static BigUInt isqrt(const BigUInt& a) {
    if (a.is_zero()) return BigUInt();
    BigUInt x = BigUInt(1).shifted_left((a.bit_length() + 1) / 2);
    for (;;) {
      BigUInt y = (x + a / x);
      // y /= 2
      std::uint32_t carry = 0;
      for (size_t i = y.limbs_.size(); i-- > 0;) {
        std::uint32_t cur = y.limbs_[i];
        y.limbs_[i] = (cur >> 1) | (carry << 31);
        carry = cur & 1u;
      }
      y.trim();
      if (cmp(y, x) >= 0) break;
      x = y;
    }
    while (cmp(x * x, a) > 0) x = x - BigUInt(1);
    return x;
  }

  double to_double() const {
    if (is_zero()) return 0.0;
    // top 64 bits + exponent
    int bl = bit_length();
    double v = 0.0;
    int start = std::max(0, bl - 64);
    for (int i = bl - 1; i >= start; --i) v = v * 2.0 + (bit(i) ? 1.0 : 0.0);
    return std::ldexp(v, start);
  }

  std::uint64_t to_u64() const {
    std::uint64_t v = 0;
    if (limbs_.size() > 2) throw Error("BigUInt: value does not fit in 64 bits");
    if (limbs_.size() > 1) v = std::uint64_t(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
  }

  bool fits_u64() const { return limbs_.size() <= 2; }

  std::string to_string() const {
    if (is_zero()) return "0";
    BigUInt t = *this;
    const BigUInt billion(1000000000u);
    std::vector<std::uint32_t> chunks;
    while (!t.is_zero()) {
      BigUInt r;
      t = divmod(t, billion, &r);
      chunks.push_back(std::uint32_t(r.is_zero() ? 0 : r.limbs_[0]));
    }
    std::string s = std::to_string(chunks.back());
    for (size_t i = chunks.size() - 1; i-- > 0;) {
      std::string part = std::to_string(chunks[i]);
      s += std::string(9 - part.size(), '0') + part;
    }
    return s;
  }

 private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }
  std::vector<std::uint32_t> limbs_;
};

// Signed big integer.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v) : neg_(v < 0), mag_(v < 0 ? std::uint64_t(-(v + 1)) + 1 : std::uint64_t(v)) {}
  BigInt(BigUInt mag, bool neg = false) : neg_(neg && !mag.is_zero()), mag_(std::move(mag)) {}

  bool is_zero() const { return mag_.is_zero(); }
  bool negative() const { return neg_; }
  const BigUInt& magnitude() const { return mag_; }
  int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

  BigInt operator-() const { return BigInt(mag_, !neg_); }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.neg_ == b.neg_) return BigInt(a.mag_ + b.mag_, a.neg_);
    int c = BigUInt::cmp(a.mag_, b.mag_);
    if (c == 0) return BigInt();
    if (c > 0) return BigInt(a.mag_ - b.mag_, a.neg_);
    return BigInt(b.mag_ - a.mag_, b.neg_);
  }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }
  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    return BigInt(a.mag_ * b.mag_, a.neg_ != b.neg_);
  }

  static int cmp(const BigInt& a, const BigInt& b) {
    if (a.sign() != b.sign()) return a.sign() < b.sign() ? -1 : 1;
    int c = BigUInt::cmp(a.mag_, b.mag_);
    return a.neg_ ? -c : c;
  }
  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
  friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }

  double to_double() const { return neg_ ? -mag_.to_double() : mag_.to_double(); }
  std::int64_t to_i64() const {
    std::uint64_t m = mag_.to_u64();
    if (m > 0x7fffffffffffffffull) throw Error("BigInt: value does not fit in 64 bits");
    return neg_ ? -std::int64_t(m) : std::int64_t(m);
  }
  std::string to_string() const { return (neg_ ? "-" : "") + mag_.to_string(); }

 private:
  bool neg_ = false;
  BigUInt mag_;
};

// Exact rational p/q, always reduced, q >= 1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t p, std::int64_t q = 1) : num_(p), den_(q < 0 ? BigUInt(std::uint64_t(-q)) : BigUInt(std::uint64_t(q))) {
    if (q == 0) throw Error("Rational: zero denominator");
    if (q < 0) num_ = -num_;
    reduce();
  }
  Rational(BigInt p, BigUInt q) : num_(std::move(p)), den_(std::move(q)) {
    if (den_.is_zero()) throw Error("Rational: zero denominator");
    reduce();
  }

  // Exact value of a double: m * 2^e with integer m.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw Error("Rational: non-finite value");
    if (x == 0.0) return Rational();
    int e = 0;
    double m = std::frexp(x, &e);  // x = m * 2^e, 0.5 <= |m| < 1
    std::int64_t mi = std::int64_t(std::ldexp(m, 53));
    e -= 53;
    Rational r(mi);
    if (e > 0)
      r.num_ = r.num_ * BigInt(BigUInt(1).shifted_left(e));
    else if (e < 0)
      r.den_ = r.den_ * BigUInt(1).shifted_left(-e);
    r.reduce();
    return r;
  }

  const BigInt& num() const { return num_; }
  const BigUInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == BigUInt(1); }
  int sign() const { return num_.sign(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * BigInt(b.den_) + b.num_ * BigInt(a.den_), a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * BigInt(b.den_) - b.num_ * BigInt(a.den_), a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error("Rational: division by zero");
    BigInt n = a.num_ * BigInt(b.den_);
    BigInt d = b.num_ * BigInt(a.den_);
    if (d.negative()) {
      n = -n;
      d = -d;
    }
    return Rational(n, d.magnitude());
  }
  Rational operator-() const { return Rational(-num_, den_); }

  static int cmp(const Rational& a, const Rational& b) {
    return BigInt::cmp(a.num_ * BigInt(b.den_), b.num_ * BigInt(a.den_));
  }
  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

  // floor(p/q) as a BigInt.
  BigInt floor() const {
    BigUInt q = BigUInt::divmod(num_.magnitude(), den_, nullptr);
    if (!num_.negative()) return BigInt(q);
    BigUInt r;
    BigUInt::divmod(num_.magnitude(), den_, &r);
    if (r.is_zero()) return BigInt(q, true);
    return BigInt(q + BigUInt(1), true);
  }

  double to_double() const {
    // Scale so that the quotient keeps ~64 significant bits.
    int shift = std::max(0, den_.bit_length() - num_.magnitude().bit_length() + 64);
    BigUInt scaled = num_.magnitude().shifted_left(shift);
    BigUInt q = BigUInt::divmod(scaled, den_, nullptr);
    double v = std::ldexp(q.to_double(), -shift);
    return num_.negative() ? -v : v;
  }

  std::string to_string() const { return num_.to_string() + "/" + den_.to_string(); }

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = BigUInt(1);
      return;
    }
    BigUInt g = BigUInt::gcd(num_.magnitude(), den_);
    if (g > BigUInt(1)) {
      num_ = BigInt(num_.magnitude() / g, num_.negative());
      den_ = den_ / g;
    }
  }
  BigInt num_;
  BigUInt den_;
};

// The golden mean (sqrt(5)-1)/2 as an exact rational correct to `digits`
// decimal digits.  Used wherever a plain double would run out of continued
// fraction terms.
inline Rational golden_mean(int digits = 60) {
  BigUInt scale = BigUInt::pow10(digits);
  BigUInt five_s2 = BigUInt(5) * scale * scale;
  BigUInt root = BigUInt::isqrt(five_s2);  // floor(sqrt(5) * 10^digits)
  return Rational(BigInt(root - scale), scale * BigUInt(2));
}

}  // namespace crn
