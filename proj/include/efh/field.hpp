#pragma once

#include "efh/rational.hpp"

#include <cstdint>
#include <string>

namespace efh {

/// Descriptor of the coefficient field: the rationals or a prime field F_p
/// with p < 2^31.
///
/// Field elements are carried as `Rational` values. Over F_p every element
/// is kept as its canonical residue, an integer in [0, p).
class Field {
public:
  Field() = default;

  static Field rationals() { return Field(); }
  /// Throws MathError(kNotPrime) unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);

  bool is_rational() const { return p_ == 0; }
  bool is_prime() const { return p_ != 0; }
  /// 0 for Q.
  std::uint32_t characteristic() const { return p_; }

  /// Maps a rational into this field. Over F_p the denominator must be a unit
  /// modulo p; throws MathError(kInvalidArgument) otherwise.
  Rational element(const Rational& q) const;
  std::uint32_t residue(const Rational& q) const;

  Rational add(const Rational& a, const Rational& b) const;
  Rational sub(const Rational& a, const Rational& b) const;
  Rational mul(const Rational& a, const Rational& b) const;
  Rational neg(const Rational& a) const;
  /// Throws std::domain_error on zero.
  Rational inv(const Rational& a) const;
  Rational div(const Rational& a, const Rational& b) const { return mul(a, inv(b)); }

  /// True when `a` is the canonical representative of an element.
  bool is_canonical(const Rational& a) const;

  /// "Q" or "F_p".
  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime_number(std::uint64_t n);
std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);

}  // namespace efh
