#ifndef PAINLEVE_NUMERIC_HPP
#define PAINLEVE_NUMERIC_HPP

#include <string>
#include <vector>

#include "painleve/ode_system.hpp"
#include "painleve/recursion.hpp"

namespace painleve {

/// Partial sum of the series at t > 0 (real positive branch for fractional
/// powers), in double precision.
std::vector<double> eval_series(const SeriesSolution& sol, double t);

/// Max over equations of |d/dt series - rhs(series)| at t. Evaluated from
/// the exact residual expansion of the truncated series (the formally
/// matched orders cancel exactly in rational arithmetic), which avoids the
/// catastrophic cancellation a direct float evaluation would hit near t = 0.
double ode_residual(const SeriesSolution& sol, const QuadraticSystem& sys, double t);

/// Direct float evaluation of the same quantity, usable away from t = 0.
double ode_residual_direct(const SeriesSolution& sol, const QuadraticSystem& sys, double t);

/// Exponent of the leading nonzero term of the exact residual expansion,
/// minimized over equations: the expected log-log residual slope.
double residual_leading_exponent(const SeriesSolution& sol);

/// Least-squares slope of log r against log t.
double loglog_slope(const std::vector<double>& ts, const std::vector<double>& rs);

/// Probe grid {T, T/2, T/4} for the residual-order fit. T starts at a
/// quarter of the estimated convergence radius (capped at 0.1) and is
/// halved, a bounded number of times, until the measured decade sits on the
/// asymptotic order, so accidental tail cancellations at large t do not
/// spoil the fit.
std::vector<double> residual_slope_grid(const SeriesSolution& sol);

struct IntegratorStats {
  long steps = 0;
  long rejected = 0;
  double rtol = 0;
  double atol = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  IntegratorStats stats;
  bool truncated = false;
  std::string truncation_reason;
};

/// Adaptive embedded Dormand-Prince 5(4) with PI step control; accepted
/// steps are recorded as the sampled output.
Trajectory integrate(const QuadraticSystem& sys, const std::vector<double>& initial, double t0,
                     double t1, double rtol, double atol);

/// Phase-plane coordinates of a warped-product state:
///   X_i = sqrt(d_i) u_i / u_{r+1},  Y_i = sqrt(x_i) / u_{r+1}
/// and the Lyapunov value L = sum_i (X_i^2 + Y_i^2) - 1. On the constraint
/// set L = -1/u_{r+1}^2.
struct GeometricFrame {
  std::vector<double> X;
  std::vector<double> Y;
  double lyapunov = 0;
};

GeometricFrame geometric_frame(const QuadraticSystem& sys, const std::vector<double>& state);

/// Right-hand side of the reduced phase-plane flow
///   X_i' = X_i (sum X_j^2 - 1) + Y_i^2 / sqrt(d_i)
///   Y_i' = Y_i (sum X_j^2 - X_i / sqrt(d_i))
/// with ' the derivative in the arc variable s, ds/dt = u_{r+1}.
void frame_flow(const std::vector<long>& dims, const GeometricFrame& f, std::vector<double>& dX,
                std::vector<double>& dY);

/// Max deviation of the numerically differentiated frame along the series
/// from the reduced flow, sampled at the given times (central differences of
/// width h in t, chain rule through ds/dt = u_{r+1}).
double vectfield_residual(const SeriesSolution& sol, const std::vector<double>& t_samples, double h);

/// Limit extrapolation for a geometrically converging sequence sampled at
/// three scales (Aitken delta-squared).
double extrapolate_limit(double f0, double f1, double f2);

/// Two-stage Richardson extrapolation for samples at t, t/10, t/100 whose
/// error expansion starts with the known powers t^p1 and t^p2.
double richardson_limit(double f0, double f1, double f2, double p1, double p2);

/// Leading error powers of a frame component along the series as t -> 0,
/// read off the series itself: X_i carries the prefactor t^(gamma_i + 1) and
/// Y_i the prefactor t^(alpha_i/2 + 1), both times a correction series
/// supported on the grid steps where the participating variables actually
/// have nonzero coefficients.
void frame_limit_powers(const SeriesSolution& sol, long i, bool y_component, double& p1, double& p2);

/// Ratio-test estimate of the radius of convergence from the coefficient
/// tail; conservative (smallest over variables).
double estimate_radius(const SeriesSolution& sol);

}  // namespace painleve

#endif
