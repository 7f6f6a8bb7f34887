#include "painleve/linalg.hpp"

#include <stdexcept>

namespace painleve {

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::transposed() const {
  QMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

QMatrix QMatrix::augmented(const QVector& b) const {
  if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("augment: size mismatch");
  QMatrix m(rows_, cols_ + 1);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
    m.at(r, cols_) = b[r];
  }
  return m;
}

QVector QMatrix::apply(const QVector& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("apply: size mismatch");
  QVector y(rows_, Rational(0));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (at(r, c) != 0) y[r] += at(r, c) * x[c];
  return y;
}

RrefResult rref(QMatrix m) {
  RrefResult out;
  int lead = 0;
  for (int c = 0; c < m.cols() && lead < m.rows(); ++c) {
    int pivot = -1;
    for (int r = lead; r < m.rows(); ++r) {
      if (m.at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != lead)
      for (int k = 0; k < m.cols(); ++k) swap(m.at(pivot, k), m.at(lead, k));
    Rational inv = Rational(1) / m.at(lead, c);
    for (int k = c; k < m.cols(); ++k) m.at(lead, k) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == lead || m.at(r, c) == 0) continue;
      Rational f = m.at(r, c);
      for (int k = c; k < m.cols(); ++k) m.at(r, k) -= f * m.at(lead, k);
    }
    out.pivot_cols.push_back(c);
    ++lead;
  }
  out.mat = std::move(m);
  return out;
}

Rational det(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
  int n = m.rows();
  QMatrix a = m;
  Rational d(1);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (a.at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return Rational(0);
    if (pivot != c) {
      for (int k = 0; k < n; ++k) swap(a.at(pivot, k), a.at(c, k));
      d = -d;
    }
    d *= a.at(c, c);
    Rational inv = Rational(1) / a.at(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (a.at(r, c) == 0) continue;
      Rational f = a.at(r, c) * inv;
      for (int k = c; k < n; ++k) a.at(r, k) -= f * a.at(c, k);
    }
  }
  return d;
}

int rank(const QMatrix& m) { return rref(m).rank(); }

std::vector<QVector> kernel(const QMatrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t p = 0; p < r.pivot_cols.size(); ++p)
      v[r.pivot_cols[p]] = -r.mat.at(static_cast<int>(p), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

AffineSolutionSet solve_affine(const QMatrix& m, const QVector& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve_affine: size mismatch");
  RrefResult r = rref(m.augmented(b));
  AffineSolutionSet out;
  // infeasible iff the augmented column is a pivot
  for (int c : r.pivot_cols)
    if (c == m.cols()) return out;
  QVector x(m.cols(), Rational(0));
  for (std::size_t p = 0; p < r.pivot_cols.size(); ++p)
    x[r.pivot_cols[p]] = r.mat.at(static_cast<int>(p), m.cols());
  out.particular = std::move(x);
  out.kernel_basis = kernel(m);
  return out;
}

}  // namespace painleve
