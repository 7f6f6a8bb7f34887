#ifndef PAINLEVE_POLYNOMIAL_HPP
#define PAINLEVE_POLYNOMIAL_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "painleve/linalg.hpp"
#include "painleve/rational.hpp"

namespace painleve {

/// Polynomial over the rationals, coefficients lowest degree first.
/// The zero polynomial is the empty coefficient list.
class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(QVector coeffs) : c_(std::move(coeffs)) { trim(); }
  static QPolynomial constant(const Rational& v) { return QPolynomial(QVector{v}); }
  static QPolynomial monomial(const Rational& coeff, int degree);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return is_zero() ? -1 : static_cast<int>(c_.size()) - 1; }
  const QVector& coefficients() const { return c_; }
  Rational coefficient(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Rational(0); }
  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }

  Rational eval(const Rational& x) const;

  QPolynomial operator+(const QPolynomial& o) const;
  QPolynomial operator-(const QPolynomial& o) const;
  QPolynomial operator*(const QPolynomial& o) const;
  bool operator==(const QPolynomial& o) const { return c_ == o.c_; }

  /// p(a x + b) for rational a, b.
  QPolynomial compose_affine(const Rational& a, const Rational& b) const;

  /// Quotient of division by (x - root); remainder must be zero.
  QPolynomial deflate(const Rational& root) const;

  std::string to_string(const std::string& var = "s") const;

 private:
  void trim();
  QVector c_;
};

/// Lagrange interpolation through exactly the given nodes (distinct x's).
QPolynomial interpolate(const std::vector<std::pair<Rational, Rational>>& nodes);

/// Exact determinant of a matrix family whose entries are affine in the step
/// variable, recovered as a polynomial by evaluating det at degree_bound+1
/// integer points and interpolating. degree_bound must be at least the
/// matrix size.
QPolynomial det_poly(const std::function<QMatrix(const Rational&)>& family, int degree_bound);

struct RationalRoots {
  std::vector<std::pair<Rational, int>> roots;  // (root, multiplicity), ascending
  QPolynomial residual;                         // rational-root-free cofactor
};

/// All rational roots with multiplicities, by the rational root theorem on
/// the primitive integer form, leaving the unfactored residual.
RationalRoots rational_roots(const QPolynomial& p);

}  // namespace painleve

#endif
