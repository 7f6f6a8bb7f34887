#ifndef PAINLEVE_ODE_SYSTEM_HPP
#define PAINLEVE_ODE_SYSTEM_HPP

#include <string>
#include <vector>

#include "painleve/rational.hpp"

namespace painleve {

enum class SystemKind { Warped, BerardBergery };

std::string system_kind_name(SystemKind k);

/// One monomial of total degree <= 2: coeff * x[v1] * x[v2], with v1/v2 set
/// to -1 for absent factors (v1 <= v2 when both present).
struct Term {
  Rational coeff;
  int v1 = -1;
  int v2 = -1;

  int degree() const { return (v1 >= 0) + (v2 >= 0); }
};

/// Factor dimensions: d_1..d_r for a warped product (each >= 2), or the
/// single even base dimension for the circle-bundle ansatz.
struct DimensionSpec {
  SystemKind kind = SystemKind::Warped;
  std::vector<long> dims;

  long r() const { return static_cast<long>(dims.size()); }
  long d2() const { return dims.at(0); }

  static DimensionSpec warped(std::vector<long> dims);
  static DimensionSpec berard_bergery(long d2);
};

/// First-order ODE system with degree-<=2 polynomial right-hand sides and a
/// quadratic constraint function G whose zero set is the admissible energy
/// level. Immutable after construction.
struct QuadraticSystem {
  SystemKind kind = SystemKind::Warped;
  DimensionSpec dims;
  std::vector<std::string> variables;
  std::vector<std::vector<Term>> rhs;  // one term list per variable
  std::vector<Term> constraint;        // G; G = 0 iff the energy vanishes

  int n_vars() const { return static_cast<int>(variables.size()); }
};

/// Warped-product system in the variables (x_1..x_{r+1}, u_1..u_{r+1}):
///   x_i' = -2 x_i u_i            u_i' = -u_i u_{r+1} + x_i / d_i
///   x_{r+1}' = x_{r+1} u_{r+1}   u_{r+1}' = -sum_k d_k u_k^2
/// with constraint G = sum d_k u_k^2 - u_{r+1}^2 + sum x_k + 1.
QuadraticSystem build_warped_system(const DimensionSpec& dims);

/// Circle-bundle system in the variables (x_1, x_2, x_3, v_1, v_2, v_3):
///   x_1' = -2 x_1 v_1            v_1' = -v_1 v_3 + (x_1 + 2 x_2) / d_2
///   x_2' = -2 x_2 (2 v_1 + v_2)  v_2' = -v_2 v_3 + x_2
///   x_3' = x_3 v_3               v_3' = -d_2 v_1^2 - v_2^2
/// with constraint G = d_2 v_1^2 + v_2^2 - v_3^2 + x_1 + x_2 + 1.
/// The v_3 factor in x_3' and the square in the -v_3^2 constraint term are
/// pinned by conservation: dG/dt vanishes identically along the flow with
/// exactly these and no other variants (the conservation test enforces it).
QuadraticSystem build_bb_system(long d2);

QVector eval_rhs(const QuadraticSystem& sys, const QVector& state);
Rational eval_constraint(const QuadraticSystem& sys, const QVector& state);
/// Gradient of G, for conservation checks.
QVector eval_constraint_gradient(const QuadraticSystem& sys, const QVector& state);

std::vector<double> eval_rhs_d(const QuadraticSystem& sys, const std::vector<double>& state);
double eval_constraint_d(const QuadraticSystem& sys, const std::vector<double>& state);

}  // namespace painleve

#endif
