#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hypdist {

/// Exact rational number; GMP keeps it canonical (gcd 1, positive denominator)
/// after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a", "-a", "a/b" (b > 0). Throws DomainError("BadRational").
Rational parse_rational(std::string_view text);

/// Always "a/b", including "0/1" and "5/1".
std::string to_fraction_string(const Rational& value);

/// "a" when the denominator is 1, else "a/b"; used by the polynomial printer.
std::string to_compact_string(const Rational& value);

Integer pow_integer(const Integer& base, unsigned long exponent);
Rational pow_rational(const Rational& base, unsigned long exponent);

Integer lcm_integer(const Integer& a, const Integer& b);

}  // namespace hypdist

namespace hypdist {

/// Canonical num/den; den must be nonzero.
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace hypdist
