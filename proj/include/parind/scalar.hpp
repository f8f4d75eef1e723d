#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "parind/common.hpp"

namespace parind {

/**
 * Coefficient field of a computation: either the rationals (ell == 0) or the
 * prime field F_ell (ell an odd-or-2 prime below 2^61).  Scalars carry their
 * tag and refuse arithmetic across different tags; nothing is ever coerced.
 */
struct FieldTag {
  std::uint64_t ell = 0;

  bool is_rational() const { return ell == 0; }
  friend bool operator==(const FieldTag& a, const FieldTag& b) { return a.ell == b.ell; }
  friend bool operator!=(const FieldTag& a, const FieldTag& b) { return !(a == b); }

  std::string str() const { return is_rational() ? "Q" : "F" + std::to_string(ell); }
};

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline FieldTag rationals() { return FieldTag{0}; }

inline FieldTag prime_field(std::uint64_t ell) {
  if (!is_prime_u64(ell)) throw error("prime_field: modulus " + std::to_string(ell) + " is not prime");
  if (ell >> 61) throw error("prime_field: modulus too large (>= 2^61)");
  return FieldTag{ell};
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  // extended Euclid; m prime, a != 0 mod m
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw error("invmod: element not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

}  // namespace detail

/**
 * Exact scalar: a reduced arbitrary-precision rational (positive denominator,
 * GMP-backed) or a residue in F_ell.  All arithmetic is exact; there is no
 * floating point anywhere in the library.
 */
class Scalar {
 public:
  Scalar() : tag_{0}, q_(0) {}

  static Scalar rational(mpq_class v) {
    v.canonicalize();
    Scalar s;
    s.tag_ = rationals();
    s.q_ = std::move(v);
    return s;
  }
  static Scalar rational(long num, long den = 1) {
    if (den == 0) throw error("Scalar: zero denominator");
    return rational(mpq_class(num, den));
  }
  static Scalar modular(std::uint64_t v, FieldTag f) {
    if (f.is_rational()) throw error("Scalar::modular needs a prime field tag");
    Scalar s;
    s.tag_ = f;
    s.r_ = v % f.ell;
    return s;
  }
  static Scalar zero(FieldTag f) { return f.is_rational() ? rational(0) : modular(0, f); }
  static Scalar one(FieldTag f) { return f.is_rational() ? rational(1) : modular(1, f); }

  /// 1/n as a field element; errors if n vanishes in the field.
  static Scalar inverse_of_integer(std::uint64_t n, FieldTag f) {
    if (f.is_rational()) return rational(mpq_class(1, static_cast<unsigned long>(n)));
    if (n % f.ell == 0)
      throw error("order " + std::to_string(n) + " is divisible by the coefficient characteristic " +
                  std::to_string(f.ell));
    return modular(detail::invmod(n % f.ell, f.ell), f);
  }

  FieldTag field() const { return tag_; }
  const mpq_class& rat() const {
    require_rational();
    return q_;
  }
  std::uint64_t residue() const {
    if (tag_.is_rational()) throw error("Scalar: residue() on a rational");
    return r_;
  }

  bool is_zero() const { return tag_.is_rational() ? q_ == 0 : r_ == 0; }
  bool is_one() const { return tag_.is_rational() ? q_ == 1 : r_ == 1; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.require_same(b);
    if (a.tag_.is_rational()) return rational(a.q_ + b.q_);
    std::uint64_t v = a.r_ + b.r_;  // ell < 2^61, no overflow
    if (v >= a.tag_.ell) v -= a.tag_.ell;
    return modular(v, a.tag_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    a.require_same(b);
    if (a.tag_.is_rational()) return rational(a.q_ - b.q_);
    std::uint64_t v = a.r_ + a.tag_.ell - b.r_;
    if (v >= a.tag_.ell) v -= a.tag_.ell;
    return modular(v, a.tag_);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.require_same(b);
    if (a.tag_.is_rational()) return rational(a.q_ * b.q_);
    return modular(detail::mulmod(a.r_, b.r_, a.tag_.ell), a.tag_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }
  Scalar operator-() const {
    if (tag_.is_rational()) return rational(-q_);
    return modular(r_ == 0 ? 0 : tag_.ell - r_, tag_);
  }
  Scalar inv() const {
    if (is_zero()) throw error("Scalar: division by zero");
    if (tag_.is_rational()) return rational(1 / q_);
    return modular(detail::invmod(r_, tag_.ell), tag_);
  }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.tag_ != b.tag_) return false;
    return a.tag_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Reduce a rational scalar into F_ell; errors if the reduced denominator
  /// is divisible by ell.
  Scalar reduced_mod(FieldTag f) const {
    require_rational();
    if (f.is_rational()) return *this;
    mpz_class num = q_.get_num(), den = q_.get_den();
    mpz_class ell(static_cast<unsigned long>(f.ell));
    if (mpz_divisible_p(den.get_mpz_t(), ell.get_mpz_t()))
      throw error("reduction mod " + std::to_string(f.ell) + " hits a denominator divisible by " +
                  std::to_string(f.ell));
    mpz_class nr = num % ell, dr = den % ell;
    if (nr < 0) nr += ell;
    std::uint64_t n = nr.get_ui(), d = dr.get_ui();
    return modular(detail::mulmod(n, detail::invmod(d, f.ell), f.ell), f);
  }

  /// "num/den" (den omitted when 1) for rationals, the residue for F_ell.
  std::string str() const {
    if (tag_.is_rational()) return q_.get_str();
    return std::to_string(r_);
  }

 private:
  void require_rational() const {
    if (!tag_.is_rational()) throw field_mismatch("expected a rational scalar, found " + tag_.str());
  }
  void require_same(const Scalar& b) const {
    if (tag_ != b.tag_)
      throw field_mismatch("scalar fields differ: " + tag_.str() + " vs " + b.tag_.str());
  }

  FieldTag tag_;
  mpq_class q_;
  std::uint64_t r_ = 0;
};

/// Parse "num", "num/den" (rationals) or a residue (F_ell).
inline Scalar parse_scalar(const std::string& text, FieldTag f) {
  if (f.is_rational()) {
    mpq_class v;
    if (v.set_str(text, 10) != 0) throw error("unparsable rational: '" + text + "'");
    if (v.get_den() == 0) throw error("zero denominator in '" + text + "'");
    v.canonicalize();
    return Scalar::rational(v);
  }
  // fractions like "1/2" reduce through the rationals
  mpq_class v;
  if (v.set_str(text, 10) != 0) throw error("unparsable residue: '" + text + "'");
  if (v.get_den() == 0) throw error("zero denominator in '" + text + "'");
  v.canonicalize();
  return Scalar::rational(v).reduced_mod(f);
}

/// p-adic valuation of a nonzero rational.
inline long valuation_p(const mpq_class& q, unsigned long p) {
  if (q == 0) throw error("valuation of zero");
  mpz_class n = q.get_num(), d = q.get_den(), rest;
  mpz_class pz(p);
  long vn = static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(rest.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t()));
  return vn - vd;
}

/**
 * Is q a unit of Z[1/p], i.e. q = +-p^k for some integer k?  Returns the pair
 * (answer, k); k is meaningful only when the answer is true.
 */
inline std::pair<bool, long> is_z_inv_p_unit(const mpq_class& q, unsigned long p) {
  if (q == 0) return {false, 0};
  long v = valuation_p(q, p);
  mpq_class pk(1);
  mpz_class pz(p);
  mpz_class pw;
  mpz_pow_ui(pw.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(v >= 0 ? v : -v));
  if (v >= 0)
    pk = mpq_class(pw);
  else
    pk = mpq_class(1) / mpq_class(pw);
  return {q == pk || q == -pk, v};
}

}  // namespace parind
