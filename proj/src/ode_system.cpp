#include "painleve/ode_system.hpp"

#include <stdexcept>

namespace painleve {

std::string system_kind_name(SystemKind k) {
  return k == SystemKind::Warped ? "warped" : "bb";
}

DimensionSpec DimensionSpec::warped(std::vector<long> dims) {
  if (dims.empty()) throw std::invalid_argument("warped product needs at least one factor");
  for (long d : dims)
    if (d < 2) throw std::invalid_argument("factor dimensions must be at least 2");
  DimensionSpec s;
  s.kind = SystemKind::Warped;
  s.dims = std::move(dims);
  return s;
}

DimensionSpec DimensionSpec::berard_bergery(long d2) {
  if (d2 < 2 || d2 % 2 != 0) throw std::invalid_argument("base dimension must be even and at least 2");
  DimensionSpec s;
  s.kind = SystemKind::BerardBergery;
  s.dims = {d2};
  return s;
}

QuadraticSystem build_warped_system(const DimensionSpec& dims) {
  if (dims.kind != SystemKind::Warped) throw std::invalid_argument("dimension spec is not a warped product");
  const long r = dims.r();
  QuadraticSystem sys;
  sys.kind = SystemKind::Warped;
  sys.dims = dims;
  for (long i = 1; i <= r + 1; ++i) sys.variables.push_back("x" + std::to_string(i));
  for (long i = 1; i <= r + 1; ++i) sys.variables.push_back("u" + std::to_string(i));
  const int xi = 0, ui = static_cast<int>(r) + 1;
  sys.rhs.resize(sys.variables.size());
  for (int i = 0; i < r; ++i) {
    // x_i' = -2 x_i u_i
    sys.rhs[xi + i] = {Term{Rational(-2), std::min(xi + i, ui + i), std::max(xi + i, ui + i)}};
    // u_i' = -u_i u_{r+1} + x_i / d_i
    sys.rhs[ui + i] = {Term{Rational(-1), ui + i, ui + static_cast<int>(r)},
                       Term{Rational(1, dims.dims[i]), xi + i, -1}};
  }
  // x_{r+1}' = x_{r+1} u_{r+1}
  sys.rhs[xi + r] = {Term{Rational(1), static_cast<int>(xi + r), static_cast<int>(ui + r)}};
  // u_{r+1}' = -sum d_k u_k^2
  for (int k = 0; k < r; ++k)
    sys.rhs[ui + r].push_back(Term{Rational(-dims.dims[k]), ui + k, ui + k});

  // G = sum d_k u_k^2 - u_{r+1}^2 + sum x_k + 1
  for (int k = 0; k < r; ++k) sys.constraint.push_back(Term{Rational(dims.dims[k]), ui + k, ui + k});
  sys.constraint.push_back(Term{Rational(-1), static_cast<int>(ui + r), static_cast<int>(ui + r)});
  for (int k = 0; k < r; ++k) sys.constraint.push_back(Term{Rational(1), xi + k, -1});
  sys.constraint.push_back(Term{Rational(1), -1, -1});
  return sys;
}

QuadraticSystem build_bb_system(long d2) {
  DimensionSpec dims = DimensionSpec::berard_bergery(d2);
  QuadraticSystem sys;
  sys.kind = SystemKind::BerardBergery;
  sys.dims = dims;
  sys.variables = {"x1", "x2", "x3", "v1", "v2", "v3"};
  enum { X1, X2, X3, V1, V2, V3 };
  sys.rhs.resize(6);
  sys.rhs[X1] = {Term{Rational(-2), X1, V1}};
  sys.rhs[X2] = {Term{Rational(-4), X2, V1}, Term{Rational(-2), X2, V2}};
  sys.rhs[X3] = {Term{Rational(1), X3, V3}};
  sys.rhs[V1] = {Term{Rational(-1), V1, V3}, Term{Rational(1, d2), X1, -1}, Term{rational_from_long(2, d2), X2, -1}};
  sys.rhs[V2] = {Term{Rational(-1), V2, V3}, Term{Rational(1), X2, -1}};
  sys.rhs[V3] = {Term{Rational(-d2), V1, V1}, Term{Rational(-1), V2, V2}};
  sys.constraint = {Term{Rational(d2), V1, V1}, Term{Rational(1), V2, V2}, Term{Rational(-1), V3, V3},
                    Term{Rational(1), X1, -1}, Term{Rational(1), X2, -1}, Term{Rational(1), -1, -1}};
  return sys;
}

namespace {

Rational eval_terms(const std::vector<Term>& terms, const QVector& state) {
  Rational v(0);
  for (const Term& t : terms) {
    Rational m = t.coeff;
    if (t.v1 >= 0) m *= state[t.v1];
    if (t.v2 >= 0) m *= state[t.v2];
    v += m;
  }
  return v;
}

}  // namespace

QVector eval_rhs(const QuadraticSystem& sys, const QVector& state) {
  if (static_cast<int>(state.size()) != sys.n_vars())
    throw std::invalid_argument("eval_rhs: state size mismatch");
  QVector out(sys.n_vars());
  for (int i = 0; i < sys.n_vars(); ++i) out[i] = eval_terms(sys.rhs[i], state);
  return out;
}

Rational eval_constraint(const QuadraticSystem& sys, const QVector& state) {
  if (static_cast<int>(state.size()) != sys.n_vars())
    throw std::invalid_argument("eval_constraint: state size mismatch");
  return eval_terms(sys.constraint, state);
}

QVector eval_constraint_gradient(const QuadraticSystem& sys, const QVector& state) {
  if (static_cast<int>(state.size()) != sys.n_vars())
    throw std::invalid_argument("eval_constraint_gradient: state size mismatch");
  QVector g(sys.n_vars(), Rational(0));
  for (const Term& t : sys.constraint) {
    if (t.v1 < 0) continue;
    if (t.v2 < 0) {
      g[t.v1] += t.coeff;
    } else if (t.v1 == t.v2) {
      g[t.v1] += 2 * t.coeff * state[t.v1];
    } else {
      g[t.v1] += t.coeff * state[t.v2];
      g[t.v2] += t.coeff * state[t.v1];
    }
  }
  return g;
}

std::vector<double> eval_rhs_d(const QuadraticSystem& sys, const std::vector<double>& state) {
  std::vector<double> out(sys.n_vars(), 0.0);
  for (int i = 0; i < sys.n_vars(); ++i) {
    double v = 0;
    for (const Term& t : sys.rhs[i]) {
      double m = to_double(t.coeff);
      if (t.v1 >= 0) m *= state[t.v1];
      if (t.v2 >= 0) m *= state[t.v2];
      v += m;
    }
    out[i] = v;
  }
  return out;
}

double eval_constraint_d(const QuadraticSystem& sys, const std::vector<double>& state) {
  double v = 0;
  for (const Term& t : sys.constraint) {
    double m = to_double(t.coeff);
    if (t.v1 >= 0) m *= state[t.v1];
    if (t.v2 >= 0) m *= state[t.v2];
    v += m;
  }
  return v;
}

}  // namespace painleve
