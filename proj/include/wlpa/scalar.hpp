#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wlpa {

// Exact coefficient: a rational number (characteristic 0) or an element of a
// prime field F_p. The characteristic travels with the value; mixing values
// of different characteristics is a programming error.
class Scalar {
public:
  Scalar() = default;

  static Scalar zero(int p = 0) { return of(0, 1, p); }
  static Scalar one(int p = 0) { return of(1, 1, p); }

  static Scalar of(long long num, long long den, int p) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    Scalar s;
    s.p_ = p;
    if (p == 0) {
      if (den < 0) { num = -num; den = -den; }
      long long g = std::gcd(num < 0 ? -num : num, den);
      if (g > 1) { num /= g; den /= g; }
      s.num_ = num;
      s.den_ = den;
    } else {
      long long n = num % p; if (n < 0) n += p;
      long long d = den % p; if (d < 0) d += p;
      if (d == 0) throw std::domain_error("Scalar: denominator divisible by field characteristic");
      s.num_ = mulmod(n, inv_mod(d, p), p);
      s.den_ = 1;
    }
    return s;
  }

  int field() const { return p_; }
  bool is_zero() const { return num_ == 0; }
  long long num() const { return num_; }
  long long den() const { return den_; }

  Scalar operator-() const {
    if (p_ == 0) { Scalar s = *this; s.num_ = -s.num_; return s; }
    return of(p_ - num_, 1, p_);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check(a, b);
    if (a.p_ != 0) return of(a.num_ + b.num_, 1, a.p_);
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from128(n, d);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check(a, b);
    if (a.p_ != 0) return of(mulmod(a.num_, b.num_, a.p_), 1, a.p_);
    return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    check(a, b);
    if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
    if (a.p_ != 0) return of(mulmod(a.num_, inv_mod(b.num_, a.p_), a.p_), 1, a.p_);
    return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    check(a, b);
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

private:
  long long num_ = 0;
  long long den_ = 1;
  int p_ = 0;

  static void check(const Scalar& a, const Scalar& b) {
    if (a.p_ != b.p_) throw std::logic_error("Scalar: mixed coefficient fields");
  }

  static long long mulmod(long long a, long long b, long long p) {
    return (long long)((__int128)a * b % p);
  }

  // extended Euclid; p prime, 0 < a < p
  static long long inv_mod(long long a, long long p) {
    long long t = 0, newt = 1, r = p, newr = a;
    while (newr != 0) {
      long long q = r / newr;
      long long tmp = t - q * newt; t = newt; newt = tmp;
      tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("Scalar: not invertible mod p");
    return t < 0 ? t + p : t;
  }

  static Scalar from128(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 an = n < 0 ? -n : n;
    __int128 g = gcd128(an, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr __int128 lim = (__int128)INT64_MAX;
    if (n > lim || n < -lim || d > lim)
      throw std::overflow_error("Scalar: rational overflow");
    Scalar s;
    s.num_ = (long long)n;
    s.den_ = (long long)d;
    return s;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a;
  }
};

}  // namespace wlpa
