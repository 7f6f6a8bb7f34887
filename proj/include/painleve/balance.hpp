#ifndef PAINLEVE_BALANCE_HPP
#define PAINLEVE_BALANCE_HPP

#include <map>
#include <string>
#include <vector>

#include "painleve/ode_system.hpp"
#include "painleve/rational.hpp"

namespace painleve {

using ParamMap = std::map<std::string, Rational>;

/// Value that is either a fixed rational or a rational multiple of one named
/// free parameter (all leading coefficients in the supported families have
/// this shape).
struct LinExpr {
  Rational constant = 0;
  std::string param;      // empty when constant
  Rational scale = 0;     // coefficient of param

  static LinExpr fixed(Rational v);
  static LinExpr scaled(std::string name, Rational k);

  bool is_constant() const { return param.empty(); }
  Rational eval(const ParamMap& params) const;
  std::string to_string() const;
};

/// Point with all-nonzero rational coordinates on sum_k d_k a_k^2 = 4.
using EllipsoidPoint = QVector;

/// A leading-order ansatz: per-variable leading exponents and coefficients,
/// the common step size Q of the exponent grid, and the free parameters.
/// Variable order matches the corresponding QuadraticSystem.
struct Balance {
  SystemKind system = SystemKind::Warped;
  DimensionSpec dims;              // canonical factor order
  std::vector<int> factor_order;   // canonical position -> caller position
  std::string family;              // "uno" | "dos" | "caseI" | "caseII" | "bb"
  int sign = -1;                   // dos only: sign of the x_1 exponent
  int l = 0;                       // factors with nonzero leading exponent
  Rational Q = 1;
  Rational e0 = 1;
  QVector exponents;
  std::vector<LinExpr> coefficients;
  std::vector<std::string> free_parameters;
  std::vector<long> s;             // (exponent_j + 2)/Q per singular factor

  long r() const { return dims.r(); }
  int n_vars() const { return static_cast<int>(exponents.size()); }
  /// Leading coefficients under the given bindings; throws on unbound names.
  QVector bound_leading(const ParamMap& params) const;
  /// Bindings completed with the conventional defaults b0 = 1, a_{i,0} = 1.
  ParamMap with_defaults(const ParamMap& params) const;
};

struct BalanceSet {
  std::vector<Balance> balances;
  std::vector<std::string> notes;  // e.g. families excluded for irrational exponents
};

/// One-factor families: the double-pole family (uno) always, and the two
/// sign variants of the square-root family (dos) when d1 is a perfect
/// square. Non-square d1 gets a note instead of the dos balances, since
/// their exponents leave the rational grid.
BalanceSet balances_one_factor(long d1);

/// Multi-factor family with exponents -2 on the first l factors and 0 on the
/// rest.
Balance balance_multi_caseI(const DimensionSpec& dims, int l);

/// Multi-factor family whose nonzero exponents are a rational point on
/// sum d_k a_k^2 = 4. Factors are reordered so the singular ones come first
/// in ascending exponent; the permutation is recorded.
Balance balance_multi_caseII(const DimensionSpec& dims, const EllipsoidPoint& point);

/// The circle-bundle family with exponents (0, 2, 1, 1, -1, -1).
Balance balance_bb(long d2);

struct BalanceVerdict {
  bool pass = true;
  int equation = -1;
  std::string detail;
};

/// Substitutes the one-term ansatz into every equation and checks that the
/// minimal exponents match and their coefficients cancel, with free
/// parameters treated symbolically as nonzero (checked on a 3-point grid per
/// parameter, which is exact for the degree-2 identities involved).
BalanceVerdict validate_balance(const QuadraticSystem& sys, const Balance& bal);

/// System matching the balance (canonical factor order).
QuadraticSystem build_system(const Balance& bal);

/// Reference kernel direction at the top resonance, in the normalization the
/// projection values are quoted against (last coordinate 2, except the
/// one-factor dos family with negative exponent and d1 = 4 which uses
/// (a0, 2 b0, -1, 4)).
QVector top_resonance_reference(const Balance& bal, const ParamMap& params);

}  // namespace painleve

#endif
