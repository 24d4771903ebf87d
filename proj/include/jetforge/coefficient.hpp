// Exact field elements: arbitrary-precision rationals (characteristic 0)
// or reduced representatives of a prime field F_p with p < 2^31.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "jetforge/errors.hpp"

namespace jetforge {

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class Coefficient {
 public:
  // Rational zero.
  Coefficient() : p_(0), q_(0) {}

  static Coefficient rational(long num, long den = 1) {
    if (den == 0) throw InputError("rational with zero denominator");
    mpq_class v(num, den);
    v.canonicalize();
    return Coefficient(std::move(v));
  }

  static Coefficient rational(mpq_class v) {
    v.canonicalize();
    return Coefficient(std::move(v));
  }

  static Coefficient residue(std::uint64_t v, std::uint32_t p) {
    Coefficient c;
    c.p_ = p;
    c.r_ = v % p;
    return c;
  }

  // Integer image in the field of the given characteristic (0 means Q).
  static Coefficient of_integer(long n, std::uint32_t characteristic) {
    if (characteristic == 0) return rational(n);
    long long m = static_cast<long long>(n) % characteristic;
    if (m < 0) m += characteristic;
    return residue(static_cast<std::uint64_t>(m), characteristic);
  }

  static Coefficient zero(std::uint32_t characteristic) { return of_integer(0, characteristic); }
  static Coefficient one(std::uint32_t characteristic) { return of_integer(1, characteristic); }

  // Image of an exact rational mod p; the denominator must be a unit.
  static Coefficient residue_of_rational(const mpq_class& v, std::uint32_t p) {
    mpz_class num = v.get_num(), den = v.get_den();
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class dm = den % pz;
    if (dm == 0) throw InputError("denominator not invertible mod " + std::to_string(p));
    mpz_class nm = num % pz;
    std::uint64_t n = mpz_get_ui(mpz_class(nm < 0 ? nm + pz : nm).get_mpz_t());
    std::uint64_t d = mpz_get_ui(dm.get_mpz_t());
    return residue(mul_mod(n, inv_mod(d, p), p), p);
  }

  std::uint32_t characteristic() const { return p_; }

  bool is_zero() const { return p_ == 0 ? q_ == 0 : r_ == 0; }
  bool is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

  Coefficient operator-() const {
    if (p_ == 0) return Coefficient(mpq_class(-q_));
    return residue(r_ == 0 ? 0 : p_ - r_, p_);
  }

  Coefficient operator+(const Coefficient& o) const {
    check_same_field(o);
    if (p_ == 0) return Coefficient(mpq_class(q_ + o.q_));
    return residue(add_mod(r_, o.r_, p_), p_);
  }

  Coefficient operator-(const Coefficient& o) const { return *this + (-o); }

  Coefficient operator*(const Coefficient& o) const {
    check_same_field(o);
    if (p_ == 0) return Coefficient(mpq_class(q_ * o.q_));
    return residue(mul_mod(r_, o.r_, p_), p_);
  }

  Coefficient operator/(const Coefficient& o) const { return *this * o.inv(); }

  Coefficient inv() const {
    if (is_zero()) throw InputError("division by zero");
    if (p_ == 0) return Coefficient(mpq_class(1 / q_));
    return residue(inv_mod(r_, p_), p_);
  }

  Coefficient pow(std::uint64_t e) const {
    Coefficient acc = one(p_), base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  bool operator==(const Coefficient& o) const {
    if (p_ != o.p_) return false;
    return p_ == 0 ? q_ == o.q_ : r_ == o.r_;
  }
  bool operator!=(const Coefficient& o) const { return !(*this == o); }

  const mpq_class& rational_value() const {
    if (p_ != 0) throw InputError("not a rational coefficient");
    return q_;
  }

  std::uint64_t residue_value() const {
    if (p_ == 0) throw InputError("not a prime-field coefficient");
    return r_;
  }

  std::string str() const {
    if (p_ == 0) return q_.get_str();
    return std::to_string(r_);
  }

 private:
  explicit Coefficient(mpq_class v) : p_(0), q_(std::move(v)) {}

  void check_same_field(const Coefficient& o) const {
    if (p_ != o.p_)
      throw InputError("coefficient field mismatch: char " + std::to_string(p_) + " vs " +
                       std::to_string(o.p_));
  }

  static std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }

  // p < 2^31, so the product of two reduced values fits in 64 bits.
  static std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
    return (a * b) % p;
  }

  static std::uint64_t inv_mod(std::uint64_t a, std::uint32_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
      std::int64_t qq = r / nr;
      std::int64_t tmp = t - qq * nt;
      t = nt;
      nt = tmp;
      tmp = r - qq * nr;
      r = nr;
      nr = tmp;
    }
    if (r != 1) throw InputError("residue not invertible");
    return static_cast<std::uint64_t>(t < 0 ? t + p : t);
  }

  std::uint32_t p_;  // 0 = rationals, otherwise the prime modulus
  mpq_class q_;      // value when p_ == 0, in lowest terms
  std::uint64_t r_ = 0;  // value in [0, p) when p_ != 0
};

}  // namespace jetforge
