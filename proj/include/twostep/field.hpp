#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace twostep {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when values from two different fields meet in one operation.
class FieldMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a rational cannot be reduced modulo p (p divides a denominator).
class ReductionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

/// Residue class modulo a prime p, always kept in [0, p).
class ModP {
 public:
  ModP() = default;
  ModP(std::uint64_t value, std::uint32_t p) : v_(static_cast<std::uint32_t>(value % p)), p_(p) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }

  ModP inverse() const {
    if (v_ == 0) throw std::domain_error("ModP: inverse of zero");
    // Fermat: v^(p-2)
    std::uint64_t result = 1, base = v_, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return ModP(result, p_);
  }

  ModP operator-() const { return ModP(v_ == 0 ? 0 : p_ - v_, p_); }

  ModP& operator+=(const ModP& o) {
    check(o);
    v_ = static_cast<std::uint32_t>((std::uint64_t{v_} + o.v_) % p_);
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    check(o);
    v_ = static_cast<std::uint32_t>((std::uint64_t{v_} + p_ - o.v_) % p_);
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    check(o);
    v_ = static_cast<std::uint32_t>(std::uint64_t{v_} * o.v_ % p_);
    return *this;
  }
  ModP& operator/=(const ModP& o) {
    check(o);
    return *this *= o.inverse();
  }

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP&, const ModP&) = default;

 private:
  void check(const ModP& o) const {
    if (p_ != o.p_) throw FieldMismatch("ModP: operands live in different prime fields");
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const ModP& a) { return a.value() == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const ModP& a) { return std::to_string(a.value()); }

/// The field of rational numbers with arbitrary-precision numerator and denominator.
struct RationalField {
  using Scalar = Rational;

  Scalar zero() const { return Rational(0); }
  Scalar one() const { return Rational(1); }
  Scalar from_int(long v) const { return Rational(v); }
  Scalar from_integer(const Integer& z) const { return Rational(z); }
  std::string name() const { return "Q"; }

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

/// The prime field F_p for a runtime prime p < 2^31.
class PrimeField {
 public:
  using Scalar = ModP;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p))
      throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not a prime below 2^31");
  }

  std::uint32_t characteristic() const { return p_; }

  Scalar zero() const { return ModP(0, p_); }
  Scalar one() const { return ModP(1, p_); }
  Scalar from_int(long v) const {
    long r = v % static_cast<long>(p_);
    if (r < 0) r += p_;
    return ModP(static_cast<std::uint64_t>(r), p_);
  }
  Scalar from_integer(const Integer& z) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
    return ModP(r.get_ui(), p_);
  }
  /// Image of a p-integral rational; throws ReductionError when p divides the denominator.
  Scalar reduce(const Rational& q) const {
    Scalar den = from_integer(q.get_den());
    if (is_zero(den))
      throw ReductionError("cannot reduce " + q.get_str() + " modulo " + std::to_string(p_));
    return from_integer(q.get_num()) / den;
  }
  std::string name() const { return "F" + std::to_string(p_); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

template <class F>
concept ExactField = std::equality_comparable<F> && requires(const F& f, const typename F::Scalar& a, long v) {
  { f.zero() } -> std::convertible_to<typename F::Scalar>;
  { f.one() } -> std::convertible_to<typename F::Scalar>;
  { f.from_int(v) } -> std::convertible_to<typename F::Scalar>;
  { is_zero(a) } -> std::same_as<bool>;
  { to_string(a) } -> std::same_as<std::string>;
};

}  // namespace twostep
