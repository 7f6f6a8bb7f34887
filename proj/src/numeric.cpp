#include "painleve/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace painleve {

std::vector<double> eval_series(const SeriesSolution& sol, double t) {
  if (t <= 0) throw std::invalid_argument("eval_series: t must be positive");
  const int n = sol.sys.n_vars();
  std::vector<double> out(n, 0.0);
  for (int v = 0; v < n; ++v) {
    double acc = 0;
    for (long i = sol.N; i >= 0; --i) {
      const Rational& c = sol.coeff[v][i];
      if (c == 0) continue;
      acc += to_double(c) * std::pow(t, to_double(sol.exponent(v, i)));
    }
    out[v] = acc;
  }
  return out;
}

double ode_residual(const SeriesSolution& sol, const QuadraticSystem& sys, double t) {
  if (t <= 0) throw std::invalid_argument("ode_residual: t must be positive");
  if (sys.n_vars() != sol.sys.n_vars()) throw std::invalid_argument("ode_residual: system mismatch");
  auto residual = formal_residual(sol);
  double worst = 0;
  for (const auto& eq : residual) {
    double acc = 0;
    for (const auto& [e, c] : eq) acc += to_double(c) * std::pow(t, to_double(e));
    worst = std::max(worst, std::fabs(acc));
  }
  return worst;
}

double ode_residual_direct(const SeriesSolution& sol, const QuadraticSystem& sys, double t) {
  std::vector<double> state = eval_series(sol, t);
  std::vector<double> rhs = eval_rhs_d(sys, state);
  double worst = 0;
  for (int v = 0; v < sys.n_vars(); ++v) {
    double deriv = 0;
    for (long i = 0; i <= sol.N; ++i) {
      const Rational& c = sol.coeff[v][i];
      if (c == 0) continue;
      double e = to_double(sol.exponent(v, i));
      deriv += to_double(c) * e * std::pow(t, e - 1);
    }
    worst = std::max(worst, std::fabs(deriv - rhs[v]));
  }
  return worst;
}

double residual_leading_exponent(const SeriesSolution& sol) {
  auto residual = formal_residual(sol);
  bool any = false;
  Rational lead;
  for (const auto& eq : residual) {
    if (eq.empty()) continue;
    if (!any || eq.front().first < lead) lead = eq.front().first;
    any = true;
  }
  if (!any) return 0;  // exact solution, no truncation error
  return to_double(lead);
}

double loglog_slope(const std::vector<double>& ts, const std::vector<double>& rs) {
  if (ts.size() != rs.size() || ts.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double x = std::log(ts[i]);
    double y = std::log(rs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> residual_slope_grid(const SeriesSolution& sol) {
  double t = std::min(0.1, 0.25 * estimate_radius(sol));
  double expected = residual_leading_exponent(sol);
  if (expected != 0) {
    for (int k = 0; k < 8; ++k) {
      double r0 = ode_residual(sol, sol.sys, t);
      double r1 = ode_residual(sol, sol.sys, t / 2);
      if (r0 > 0 && r1 > 0 && std::fabs(std::log2(r0 / r1) - expected) <= 0.25) break;
      t /= 2;
    }
  }
  return {t, t / 2, t / 4};
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

bool finite_state(const std::vector<double>& y) {
  for (double v : y)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

Trajectory integrate(const QuadraticSystem& sys, const std::vector<double>& initial, double t0,
                     double t1, double rtol, double atol) {
  if (static_cast<int>(initial.size()) != sys.n_vars())
    throw std::invalid_argument("integrate: state size mismatch");
  if (!finite_state(initial)) throw std::invalid_argument("integrate: initial state not finite");

  Trajectory traj;
  traj.stats.rtol = rtol;
  traj.stats.atol = atol;
  const int n = sys.n_vars();
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  double t = t0;
  std::vector<double> y = initial;
  traj.times.push_back(t);
  traj.states.push_back(y);

  std::vector<double> k1 = eval_rhs_d(sys, y);
  double span = std::fabs(t1 - t0);
  double h = dir * std::min(1e-4 * span + 1e-12, span);
  double err_prev = 1.0;
  const long max_steps = 2000000;

  std::vector<double> k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y5(n);
  while (dir * (t1 - t) > 1e-300) {
    if (traj.stats.steps + traj.stats.rejected > max_steps) {
      traj.truncated = true;
      traj.truncation_reason = "step budget exhausted";
      return traj;
    }
    if (dir * (t + h) > dir * t1) h = t1 - t;
    if (std::fabs(h) < 1e-15 * std::max(1.0, std::fabs(t))) {
      traj.truncated = true;
      traj.truncation_reason = "step size underflow";
      return traj;
    }

    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + h * A21 * k1[i];
    k2 = eval_rhs_d(sys, ytmp);
    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
    k3 = eval_rhs_d(sys, ytmp);
    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    k4 = eval_rhs_d(sys, ytmp);
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    k5 = eval_rhs_d(sys, ytmp);
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
    k6 = eval_rhs_d(sys, ytmp);
    for (int i = 0; i < n; ++i)
      y5[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
    k7 = eval_rhs_d(sys, y5);

    double err = 0;
    for (int i = 0; i < n; ++i) {
      double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
      double sc = atol + rtol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / n);

    if (!finite_state(y5) || !std::isfinite(err)) {
      traj.truncated = true;
      traj.truncation_reason = "state diverged";
      return traj;
    }

    if (err <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;  // first-same-as-last
      traj.times.push_back(t);
      traj.states.push_back(y);
      ++traj.stats.steps;
      double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
      h *= std::clamp(fac, 0.2, 5.0);
      err_prev = std::max(err, 1e-10);
    } else {
      ++traj.stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -1.0 / 5.0));
    }
  }
  return traj;
}

GeometricFrame geometric_frame(const QuadraticSystem& sys, const std::vector<double>& state) {
  if (sys.kind != SystemKind::Warped)
    throw std::invalid_argument("geometric_frame: warped-product systems only");
  const long r = sys.dims.r();
  double w = state[2 * r + 1];
  if (w == 0) throw std::invalid_argument("geometric_frame: u_{r+1} vanishes, frame undefined");
  GeometricFrame f;
  f.X.resize(r);
  f.Y.resize(r);
  double sum = 0;
  for (long i = 0; i < r; ++i) {
    if (state[i] < 0) throw std::invalid_argument("geometric_frame: negative x coordinate");
    f.X[i] = std::sqrt(static_cast<double>(sys.dims.dims[i])) * state[r + 1 + i] / w;
    f.Y[i] = std::sqrt(state[i]) / w;
    sum += f.X[i] * f.X[i] + f.Y[i] * f.Y[i];
  }
  f.lyapunov = sum - 1.0;
  return f;
}

void frame_flow(const std::vector<long>& dims, const GeometricFrame& f, std::vector<double>& dX,
                std::vector<double>& dY) {
  const std::size_t r = dims.size();
  double sumX2 = 0;
  for (std::size_t j = 0; j < r; ++j) sumX2 += f.X[j] * f.X[j];
  dX.resize(r);
  dY.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    double rd = std::sqrt(static_cast<double>(dims[i]));
    dX[i] = f.X[i] * (sumX2 - 1.0) + f.Y[i] * f.Y[i] / rd;
    dY[i] = f.Y[i] * (sumX2 - f.X[i] / rd);
  }
}

double vectfield_residual(const SeriesSolution& sol, const std::vector<double>& t_samples, double h) {
  const long r = sol.sys.dims.r();
  double worst = 0;
  std::vector<double> dX, dY;
  for (double t : t_samples) {
    GeometricFrame mid = geometric_frame(sol.sys, eval_series(sol, t));
    GeometricFrame fwd = geometric_frame(sol.sys, eval_series(sol, t + h));
    GeometricFrame bwd = geometric_frame(sol.sys, eval_series(sol, t - h));
    double w = eval_series(sol, t)[2 * r + 1];  // ds/dt
    frame_flow(sol.sys.dims.dims, mid, dX, dY);
    for (long i = 0; i < r; ++i) {
      double dXdt = (fwd.X[i] - bwd.X[i]) / (2 * h);
      double dYdt = (fwd.Y[i] - bwd.Y[i]) / (2 * h);
      worst = std::max(worst, std::fabs(dXdt / w - dX[i]));
      worst = std::max(worst, std::fabs(dYdt / w - dY[i]));
    }
  }
  return worst;
}

double extrapolate_limit(double f0, double f1, double f2) {
  double d1 = f1 - f0, d2 = f2 - f1;
  double dd = d2 - d1;
  if (dd == 0) return f2;
  return f2 - d2 * d2 / dd;
}

double richardson_limit(double f0, double f1, double f2, double p1, double p2) {
  double r1 = std::pow(10.0, -p1);
  double g0 = (f1 - r1 * f0) / (1 - r1);
  double g1 = (f2 - r1 * f1) / (1 - r1);
  double r2 = std::pow(10.0, -p2);
  return (g1 - r2 * g0) / (1 - r2);
}

void frame_limit_powers(const SeriesSolution& sol, long i, bool y_component, double& p1, double& p2) {
  const Balance& bal = sol.bal;
  const long r = bal.r();
  const int numerator_var = y_component ? static_cast<int>(i) : static_cast<int>(r + 1 + i);
  std::set<long> steps;
  for (int var : {numerator_var, static_cast<int>(2 * r + 1)}) {
    for (long m = 1; m <= sol.N; ++m)
      if (sol.coeff[var][m] != 0) steps.insert(m);
  }
  // correction exponents live in the semigroup generated by the present
  // steps; below 2 m1 only plain steps occur
  long m1 = steps.empty() ? 1 : *steps.begin();
  long m2 = 2 * m1;
  if (steps.size() > 1) m2 = std::min(m2, *std::next(steps.begin()));
  double q = to_double(bal.Q);
  double p0 = y_component ? to_double(bal.exponents[i]) / 2 + 1
                          : to_double(bal.exponents[r + 1 + i]) + 1;
  if (p0 == 0) {
    p1 = m1 * q;
    p2 = m2 * q;
  } else {
    p1 = p0;
    p2 = p0 + m1 * q;
  }
}

double estimate_radius(const SeriesSolution& sol) {
  // root test on the coefficient tail: |a_i| ~ C R^(-i Q) gives
  // R ~ |a_i|^(-1/(i Q)). Sparse series (zero steps) are handled by only
  // sampling nonzero coefficients.
  double radius = std::numeric_limits<double>::infinity();
  const double q = to_double(sol.bal.Q);
  for (int v = 0; v < sol.sys.n_vars(); ++v) {
    std::vector<double> estimates;
    for (long i = sol.N; i > sol.N / 2 && i > 0; --i) {
      const Rational& a = sol.coeff[v][i];
      if (a == 0) continue;
      estimates.push_back(std::pow(std::fabs(to_double(a)), -1.0 / (q * static_cast<double>(i))));
      if (estimates.size() == 6) break;
    }
    if (estimates.empty()) continue;
    std::sort(estimates.begin(), estimates.end());
    radius = std::min(radius, estimates[estimates.size() / 2]);
  }
  return radius;
}

}  // namespace painleve
