#include "painleve/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace painleve {

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t slashes = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '-' || c == '+') {
      bool at_term_start = (i == 0) || (s[i - 1] == '/');
      if (!at_term_start) throw std::invalid_argument("bad rational literal: " + s);
    } else if (c == '/') {
      ++slashes;
      if (slashes > 1 || i == 0 || i + 1 == s.size())
        throw std::invalid_argument("bad rational literal: " + s);
    } else if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("bad rational literal: " + s);
    }
  }
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

double to_double(const Rational& x) { return x.get_d(); }

Rational rational_from_long(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rational_gcd(const QVector& values) {
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const Rational& v : values) {
    if (v == 0) continue;
    mpz_class n = abs(v.get_num());
    mpz_class d = v.get_den();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  if (num_gcd == 0) return Rational(0);
  Rational g(num_gcd, den_lcm);
  g.canonicalize();
  return g;
}

bool is_perfect_square(long n) {
  if (n < 0) return false;
  mpz_class z(n);
  return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

long exact_sqrt(long n) {
  if (!is_perfect_square(n)) throw std::invalid_argument("not a perfect square");
  mpz_class z(n), r;
  mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
  return r.get_si();
}

Rational rational_pow(const Rational& x, long k) {
  if (k == 0) return Rational(1);
  if (x == 0 && k < 0) throw std::invalid_argument("0 to a negative power");
  Rational base = k > 0 ? x : Rational(1) / x;
  long e = k > 0 ? k : -k;
  Rational out(1);
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

std::string vector_to_string(const QVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

bool proportional(const QVector& u, const QVector& v) {
  if (u.size() != v.size()) return false;
  bool u_zero = true, v_zero = true;
  for (const auto& x : u) u_zero = u_zero && x == 0;
  for (const auto& x : v) v_zero = v_zero && x == 0;
  if (u_zero || v_zero) return false;
  // cross-ratio test: u_i v_j == u_j v_i for all pairs
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (u[i] * v[j] != u[j] * v[i]) return false;
  return true;
}

}  // namespace painleve
