#include "efh/field.hpp"

#include "efh/error.hpp"

#include <stdexcept>

namespace efh {

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  // Extended Euclid on signed 64-bit values.
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("not invertible modulo p");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime_number(p)) {
    throw MathError(ErrorCode::kNotPrime, std::to_string(p) + " is not a prime below 2^31");
  }
  return Field(p);
}

std::uint32_t Field::residue(const Rational& q) const {
  const mpz_class pz(static_cast<unsigned long>(p_));
  mpz_class num = q.numerator() % pz;
  if (num < 0) num += pz;
  mpz_class den = q.denominator() % pz;
  if (den == 0) {
    throw MathError(ErrorCode::kInvalidArgument,
                    "denominator of " + q.str() + " vanishes in " + name());
  }
  const auto n = static_cast<std::uint64_t>(num.get_ui());
  const auto dinv = mod_inverse(static_cast<std::uint32_t>(den.get_ui()), p_);
  return static_cast<std::uint32_t>((n * dinv) % p_);
}

Rational Field::element(const Rational& q) const {
  if (is_rational()) return q;
  return Rational(static_cast<long>(residue(q)));
}

Rational Field::add(const Rational& a, const Rational& b) const {
  return is_rational() ? a + b : element(a + b);
}
Rational Field::sub(const Rational& a, const Rational& b) const {
  return is_rational() ? a - b : element(a - b);
}
Rational Field::mul(const Rational& a, const Rational& b) const {
  return is_rational() ? a * b : element(a * b);
}
Rational Field::neg(const Rational& a) const { return is_rational() ? -a : element(-a); }

Rational Field::inv(const Rational& a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  if (is_rational()) return a.inverse();
  return Rational(static_cast<long>(mod_inverse(residue(a), p_)));
}

bool Field::is_canonical(const Rational& a) const {
  if (is_rational()) return true;
  return a.is_integer() && a.sign() >= 0 && a.numerator() < static_cast<unsigned long>(p_);
}

std::string Field::name() const { return is_rational() ? "Q" : "F_" + std::to_string(p_); }

}  // namespace efh
