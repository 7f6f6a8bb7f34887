#ifndef PAINLEVE_RECURSION_HPP
#define PAINLEVE_RECURSION_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "painleve/balance.hpp"
#include "painleve/linalg.hpp"
#include "painleve/ode_system.hpp"
#include "painleve/polynomial.hpp"
#include "painleve/rational.hpp"

namespace painleve {

/// Raised when the right-hand side at a singular step leaves the image of
/// X(i); the failing step stays recorded in the resonance log.
struct CompatibilityFailure : std::runtime_error {
  explicit CompatibilityFailure(long step)
      : std::runtime_error("compatibility condition fails at step " + std::to_string(step)), step(step) {}
  long step;
};

struct DegenerateProjection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResonanceEvent {
  long step = 0;
  Rational iota;                  // step * Q
  QVector rhs;
  std::vector<QVector> kernel;    // canonical basis from the reduced echelon form
  bool compatible = false;
  QVector chosen;                 // coefficient vector installed at this step
  Rational lambda;                // multiple of the reference kernel direction
  bool lambda_set = false;
  std::string source;             // "default-zero" | "user-choice" | "h0-projection"
};

/// All series coefficients computed so far. coeff[v][i] is the coefficient
/// of t^(exponent_v + i Q); indices below zero are implicitly 0.
struct RecursionState {
  QuadraticSystem sys;
  Balance bal;
  ParamMap params;
  std::vector<QVector> coeff;     // [variable][step]
  long computed = 0;              // steps 0..computed are filled
  std::vector<ResonanceEvent> resonance_log;

  long top_step() const;          // 2/Q, where the energy projection happens
};

/// Truncated generalized power series solution
///   x_v(t) = sum_{i=0..N} coeff[v][i] t^(exponent_v + i Q).
struct SeriesSolution {
  QuadraticSystem sys;
  Balance bal;
  ParamMap params;
  long N = 0;
  std::vector<QVector> coeff;
  std::vector<ResonanceEvent> resonance_log;
  bool h0_projected = false;
  Rational lambda;

  Rational exponent(int var, long i) const { return bal.exponents[var] + Rational(i) * bal.Q; }
  int free_parameter_census() const;
};

enum class RootClass { Ordinary, Top, MeaninglessNegative };
std::string root_class_name(RootClass c);

struct ResonanceReport {
  QPolynomial det_in_iota;        // det X as a polynomial in iota = i Q
  QPolynomial det_in_step;
  std::vector<std::pair<Rational, int>> roots;  // in iota, with multiplicities
  QPolynomial residual;           // factor with no rational roots
  std::vector<RootClass> classification;        // parallel to roots
};

RecursionState make_recursion_state(const Balance& bal, const ParamMap& params);

/// The matrix of the linearized recursion at the given step (entries are
/// affine in the step, so a rational step argument supports interpolation).
QMatrix resonance_matrix(const Balance& bal, const ParamMap& params, const Rational& step);

/// Convolution right-hand side at a step; all lower steps must be computed.
QVector rhs_at_step(const RecursionState& st, long step);

/// Computes the coefficients at `step` (the next uncomputed one). At a
/// singular step the solution is particular + sum of resonance_choice
/// multiples of the canonical kernel basis (defaults to the particular
/// solution alone); everything is logged.
void advance(RecursionState& st, long step, const std::optional<QVector>& resonance_choice = {});

/// With the recursion advanced exactly through the top step, replaces the
/// pending kernel multiple by the unique lambda (measured against the
/// family's reference direction) that kills the t^0 coefficient of the
/// constraint, and returns it.
Rational project_H0(RecursionState& st);

SeriesSolution run(const Balance& bal, const ParamMap& params, long N, bool auto_h0);

/// Coefficients of G along the series, ordered by exponent, through the
/// given step of the constraint grid (complete through step N).
std::vector<std::pair<Rational, Rational>> constraint_series(const SeriesSolution& sol, long through);

Rational lowest_constraint_exponent(const SeriesSolution& sol);

/// Exact expansion of d/dt x_v - rhs_v along the truncated series, one
/// (exponent, coefficient) list per equation, computed by polynomial
/// convolution over the full finite tail. Zero through step N by
/// construction of the recursion; the nonzero tail is the truncation error.
std::vector<std::vector<std::pair<Rational, Rational>>> formal_residual(const SeriesSolution& sol);

ResonanceReport resonance_report(const Balance& bal, const ParamMap& params, int degree_bound = 0);

/// Default truncation: 12/Q steps, which spans 12 exponent units.
long default_truncation(const Balance& bal);

}  // namespace painleve

#endif
