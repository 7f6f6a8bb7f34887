#ifndef PAINLEVE_RATIONAL_HPP
#define PAINLEVE_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace painleve {

/// Exact arbitrary-precision rational, canonical form (gcd 1, positive
/// denominator) maintained by GMP.
using Rational = mpq_class;
using QVector = std::vector<Rational>;

/// Serializes as "p/q", with "/q" omitted when the denominator is 1.
std::string to_string(const Rational& x);

/// Parses "p/q" or an integer string. Decimal floats are rejected so no
/// value silently loses precision.
Rational parse_rational(const std::string& s);

double to_double(const Rational& x);

Rational rational_from_long(long num, long den = 1);

/// gcd over the rationals: the largest g > 0 such that every input is an
/// integer multiple of g. Zero inputs are ignored; all-zero input gives 0.
Rational rational_gcd(const QVector& values);

bool is_perfect_square(long n);

/// Integer square root of a perfect square; throws otherwise.
long exact_sqrt(long n);

/// x^k for integer k (k < 0 requires x != 0).
Rational rational_pow(const Rational& x, long k);

std::string vector_to_string(const QVector& v);

/// True if u and v span the same line (both nonzero and proportional).
bool proportional(const QVector& u, const QVector& v);

}  // namespace painleve

#endif
