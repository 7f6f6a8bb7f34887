#include <doctest.h>

#include "painleve/linalg.hpp"
#include "test_util.hpp"

using namespace painleve;

TEST_CASE("determinant of the identity") {
  CHECK(det(QMatrix::identity(3)) == 1);
  CHECK(det(QMatrix::identity(1)) == 1);
}

TEST_CASE("determinant rejects non-square input") {
  CHECK_THROWS_AS(det(QMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  testutil::Lcg gen;
  for (int n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 8; ++rep) {
      QMatrix m = testutil::random_matrix(gen, n, n);
      CHECK(det(m) == testutil::cofactor_det(m));
    }
  }
}

TEST_CASE("rank of the zero matrix") { CHECK(rank(QMatrix(2, 3)) == 0); }

TEST_CASE("rank plus kernel dimension equals column count") {
  testutil::Lcg gen;
  for (int rep = 0; rep < 20; ++rep) {
    int rows = gen.next_in(1, 5);
    int cols = gen.next_in(1, 5);
    QMatrix m = testutil::random_matrix(gen, rows, cols);
    CHECK(rank(m) + static_cast<int>(kernel(m).size()) == cols);
  }
}

TEST_CASE("kernel of an invertible matrix is empty") {
  QMatrix m = QMatrix::identity(3);
  m.at(0, 2) = 7;
  m.at(1, 0) = Rational(1, 2);
  CHECK(kernel(m).empty());
}

TEST_CASE("kernel vectors satisfy M v = 0 exactly") {
  testutil::Lcg gen;
  for (int rep = 0; rep < 12; ++rep) {
    QMatrix m = testutil::random_matrix(gen, gen.next_in(1, 4), gen.next_in(2, 5));
    for (const QVector& v : kernel(m)) {
      for (const Rational& y : m.apply(v)) CHECK(y == 0);
    }
  }
}

TEST_CASE("solve_affine with the identity returns b itself") {
  QVector b = {Rational(3), Rational(-1, 2), Rational(7, 3)};
  AffineSolutionSet s = solve_affine(QMatrix::identity(3), b);
  REQUIRE(s.feasible());
  CHECK(*s.particular == b);
  CHECK(s.kernel_basis.empty());
}

TEST_CASE("solve_affine flags an inconsistent system") {
  // second row is twice the first, incompatible right-hand side
  QMatrix m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 2;
  m.at(1, 1) = 4;
  AffineSolutionSet s = solve_affine(m, {Rational(1), Rational(3)});
  CHECK_FALSE(s.feasible());
}

TEST_CASE("solve_affine solutions sweep the full affine set") {
  testutil::Lcg gen;
  for (int rep = 0; rep < 12; ++rep) {
    int rows = gen.next_in(1, 4);
    int cols = gen.next_in(1, 4);
    QMatrix m = testutil::random_matrix(gen, rows, cols);
    QVector x(cols);
    for (int c = 0; c < cols; ++c) x[c] = gen.rational();
    QVector b = m.apply(x);  // guaranteed feasible
    AffineSolutionSet s = solve_affine(m, b);
    REQUIRE(s.feasible());
    QVector probe = *s.particular;
    Rational lambda(1);
    for (const QVector& v : s.kernel_basis) {
      lambda += Rational(1, 3);
      for (int c = 0; c < cols; ++c) probe[c] += lambda * v[c];
    }
    CHECK(m.apply(probe) == b);
  }
}

TEST_CASE("solve_affine rejects mismatched sizes") {
  CHECK_THROWS_AS(solve_affine(QMatrix::identity(3), QVector{Rational(1)}), std::invalid_argument);
}
