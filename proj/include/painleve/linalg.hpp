#ifndef PAINLEVE_LINALG_HPP
#define PAINLEVE_LINALG_HPP

#include <optional>
#include <vector>

#include "painleve/rational.hpp"

namespace painleve {

/// Dense matrix over the rationals, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Rational(0)) {}

  static QMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Rational& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  QMatrix transposed() const;

  /// Appends b as an extra column (for rank([M|b]) tests).
  QMatrix augmented(const QVector& b) const;

  QVector apply(const QVector& x) const;

  bool operator==(const QMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

/// Solution set of M x = b: empty optional when infeasible, otherwise a
/// particular solution (free variables set to 0) plus a kernel basis.
struct AffineSolutionSet {
  std::optional<QVector> particular;
  std::vector<QVector> kernel_basis;
  bool feasible() const { return particular.has_value(); }
};

/// Result of reduction to reduced row echelon form.
struct RrefResult {
  QMatrix mat;
  std::vector<int> pivot_cols;
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

RrefResult rref(QMatrix m);

/// Exact determinant by pivoted Gaussian elimination. Pivot selection is the
/// first nonzero entry in the column, which keeps runs deterministic.
Rational det(const QMatrix& m);

int rank(const QMatrix& m);

/// Basis of the right null space in the canonical form derived from the
/// reduced row echelon form: one basis vector per free column, with a 1 in
/// that free coordinate. Empty iff the matrix is injective.
std::vector<QVector> kernel(const QMatrix& m);

AffineSolutionSet solve_affine(const QMatrix& m, const QVector& b);

}  // namespace painleve

#endif
