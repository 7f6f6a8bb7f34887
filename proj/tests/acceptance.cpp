// Acceptance suite: runs every project-level criterion at its stated
// tolerance and prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "painleve/ellipsoid.hpp"
#include "painleve/numeric.hpp"
#include "painleve/recursion.hpp"

using namespace painleve;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream log;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "    FAILED: " << what << "\n";
    }
  }
};

Balance uno(long d1) { return balances_one_factor(d1).balances[0]; }

Balance dos(long d1, int sign) {
  for (const Balance& b : balances_one_factor(d1).balances)
    if (b.family == "dos" && b.sign == sign) return b;
  throw std::logic_error("no dos balance");
}

QPolynomial lin(const Rational& root) { return QPolynomial(QVector{-root, Rational(1)}); }
QPolynomial mono(int degree) { return QPolynomial::monomial(Rational(1), degree); }

QPolynomial pow_poly(const QPolynomial& p, int e) {
  QPolynomial out = QPolynomial::constant(1);
  for (int k = 0; k < e; ++k) out = out * p;
  return out;
}

std::string fam_tag(const Balance& b) {
  std::string tag = b.family + " dims=(";
  for (std::size_t i = 0; i < b.dims.dims.size(); ++i)
    tag += (i ? "," : "") + std::to_string(b.dims.dims[i]);
  return tag + ") l=" + std::to_string(b.l);
}

// ---------------------------------------------------------------- criterion 1

void criterion_determinants(Check& c) {
  // every factorization is exact and must come back in under a second
  auto check_det = [&](const Balance& b, const ParamMap& p, const QPolynomial& expect,
                       const std::string& tag) {
    auto t0 = std::chrono::steady_clock::now();
    ResonanceReport rep = resonance_report(b, p);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(rep.det_in_iota == expect, "determinant, " + tag);
    c.expect(dt < 1.0, "determinant runtime, " + tag);
  };
  // one factor, double pole: i (i + d1 - 1)(i + 1)(i - 2)
  for (long d1 = 2; d1 <= 10; ++d1) {
    QPolynomial expect = mono(1) * lin(Rational(1 - d1)) * lin(Rational(-1)) * lin(Rational(2));
    check_det(uno(d1), {{"b0", Rational(1)}}, expect, "uno d1 = " + std::to_string(d1));
  }
  // one factor, square root: iota^2 (iota + 1)(iota - 2)
  for (long d1 : {4L, 9L}) {
    for (int sign : {-1, +1}) {
      ParamMap p{{"a_{1,0}", Rational(3, 2)}, {"b0", Rational(2)}};
      QPolynomial expect = mono(2) * lin(Rational(-1)) * lin(Rational(2));
      check_det(dos(d1, sign), p, expect,
                "dos d1 = " + std::to_string(d1) + (sign > 0 ? " plus" : " minus"));
    }
  }
  // multiple factors, double pole:
  // i^{r-l+1} (i+1)(i-2)(i+e0+1)^{r-l}(i+e0-1) p(i)^{l-1},
  // p(i) = i^2 + (e0-1) i + 2(e0-1)
  for (const auto& dims : std::vector<std::vector<long>>{
           {2}, {5}, {10}, {2, 3}, {4, 5}, {2, 2}, {2, 3, 4}, {3, 3, 3}, {2, 2, 7}}) {
    const int r = static_cast<int>(dims.size());
    for (int l = 1; l <= r; ++l) {
      Balance b = balance_multi_caseI(DimensionSpec::warped(dims), l);
      const Rational& e0 = b.e0;
      QPolynomial p(QVector{2 * (e0 - 1), e0 - 1, Rational(1)});
      QPolynomial expect = pow_poly(mono(1), r - l + 1) * lin(Rational(-1)) * lin(Rational(2)) *
                           pow_poly(lin(-(e0 + 1)), r - l) * lin(-(e0 - 1)) * pow_poly(p, l - 1);
      check_det(b, b.with_defaults({}), expect, fam_tag(b));
    }
  }
  // multiple factors, ellipsoid case: iota^{r+l} (iota+1)(iota+2)^{r-l}(iota-2)
  for (const auto& [dims, l] : std::vector<std::pair<std::vector<long>, int>>{
           {{4}, 1}, {{9}, 1}, {{4, 3}, 1}, {{9, 5}, 1}, {{4, 2, 2}, 1},
           {{2, 2}, 2}, {{2, 4}, 2}, {{4, 4}, 2}, {{2, 2, 5}, 2}, {{2, 4, 3}, 2},
           {{2, 2, 2}, 3}, {{2, 2, 4}, 3}}) {
    const int r = static_cast<int>(dims.size());
    std::vector<long> head(dims.begin(), dims.begin() + l);
    auto points = enumerate_points(make_quadric(head), 15);
    c.expect(!points.empty(), "need an ellipsoid point for l = " + std::to_string(l));
    if (points.empty()) continue;
    QVector point = points.front();
    point.resize(l);
    Balance b = balance_multi_caseII(DimensionSpec::warped(dims), point);
    QPolynomial expect = pow_poly(mono(1), r + l) * lin(Rational(-1)) *
                         pow_poly(lin(Rational(-2)), r - l) * lin(Rational(2));
    check_det(b, b.with_defaults({}), expect, fam_tag(b));
  }
  // circle bundle: i^3 (i+2)(i+1)(i-2)
  for (long d2 : {2L, 4L, 6L}) {
    Balance b = balance_bb(d2);
    QPolynomial expect = pow_poly(mono(1), 3) * lin(Rational(-2)) * lin(Rational(-1)) * lin(Rational(2));
    check_det(b, b.with_defaults({}), expect, "bb d2 = " + std::to_string(d2));
  }
}

// ---------------------------------------------------------------- criterion 2

void criterion_kernels(Check& c) {
  for (long d1 = 2; d1 <= 6; ++d1) {
    for (const Rational& b0 : {Rational(1), Rational(3, 2)}) {
      auto basis = kernel(resonance_matrix(uno(d1), {{"b0", b0}}, Rational(2)));
      c.expect(basis.size() == 1 &&
                   proportional(basis[0], {Rational(d1 - 1), b0, Rational(-1, d1), Rational(2)}),
               "top kernel direction, uno d1 = " + std::to_string(d1) + ", b0 = " + to_string(b0));
    }
  }
  for (long d2 : {2L, 4L, 6L}) {
    Balance b = balance_bb(d2);
    auto basis = kernel(resonance_matrix(b, b.with_defaults({}), Rational(2)).transposed());
    QVector expect{Rational(0), Rational(0), Rational(0), Rational(0), Rational(1), Rational(1)};
    c.expect(basis.size() == 1 && proportional(basis[0], expect),
             "transpose kernel, bb d2 = " + std::to_string(d2));
  }
}

// ---------------------------------------------------------------- criterion 3

void criterion_projection_values(Check& c) {
  for (long d1 = 2; d1 <= 10; ++d1) {
    SeriesSolution sol = run(uno(d1), {{"b0", Rational(1)}}, 4, true);
    c.expect(sol.lambda == Rational(1, 3 * (d1 + 1)), "uno projection, d1 = " + std::to_string(d1));
  }
  for (const auto& [d1, sign] : std::vector<std::pair<long, int>>{{4, +1}, {9, +1}, {9, -1}}) {
    ParamMap p{{"a_{1,0}", Rational(2)}, {"b0", Rational(1)}};
    SeriesSolution sol = run(dos(d1, sign), p, 2 * exact_sqrt(d1), true);
    c.expect(sol.lambda == Rational(1, 6),
             "dos projection, d1 = " + std::to_string(d1) + (sign > 0 ? " plus" : " minus"));
  }
  for (const Rational& a0 : {Rational(1), Rational(2), Rational(3), Rational(1, 2)}) {
    ParamMap p{{"a_{1,0}", a0}, {"b0", Rational(1)}};
    SeriesSolution sol = run(dos(4, -1), p, 4, true);
    c.expect(sol.lambda == (4 - a0 * a0) / 48, "dos d1=4 minus projection, a0 = " + to_string(a0));
  }
  // caseII away from the interacting exponents: lambda = 1/6 regardless of
  // the leading coefficients
  for (const auto& [dims, point] : std::vector<std::pair<std::vector<long>, QVector>>{
           {{4, 4}, {Rational(-4, 5), Rational(-3, 5)}},
           {{4, 4}, {Rational(3, 5), Rational(4, 5)}},
           {{2, 2}, {Rational(-1, 5), Rational(7, 5)}}}) {
    Balance b = balance_multi_caseII(DimensionSpec::warped(dims), point);
    long top = Rational(Rational(2) / b.Q).get_num().get_si();
    ParamMap p = b.with_defaults({{"a_{1,0}", Rational(3, 2)}});
    SeriesSolution sol = run(b, p, top, true);
    c.expect(sol.lambda == Rational(1, 6),
             "caseII projection 1/6, first exponent " + to_string(b.exponents[0]));
  }
  // caseI: lambda = (1 + sum_{k>l} a_{k,0}) / (3 (e0 + 1)) over a grid
  for (long a20 : {0L, 1L, 2L}) {
    Balance b = balance_multi_caseI(DimensionSpec::warped({2, 3}), 1);
    SeriesSolution sol = run(b, b.with_defaults({{"a_{2,0}", Rational(a20)}}), 4, true);
    c.expect(sol.lambda == Rational(1 + a20) / (3 * (b.e0 + 1)),
             "caseI projection, dims=(2,3) l=1, a20 = " + std::to_string(a20));
  }
  for (long a20 : {0L, 1L, 2L}) {
    for (long a30 : {0L, 1L, 2L}) {
      Balance b = balance_multi_caseI(DimensionSpec::warped({3, 2, 2}), 1);
      ParamMap p = b.with_defaults({{"a_{2,0}", Rational(a20)}, {"a_{3,0}", Rational(a30)}});
      SeriesSolution sol = run(b, p, 4, true);
      c.expect(sol.lambda == Rational(1 + a20 + a30) / (3 * (b.e0 + 1)),
               "caseI projection, dims=(3,2,2) l=1, a = " + std::to_string(a20) + "," + std::to_string(a30));
    }
  }
}

// ---------------------------------------------------------------- criterion 4

void criterion_hand_coefficients(Check& c) {
  Balance b24 = balance_multi_caseII(DimensionSpec::warped({2, 4}), {Rational(-4, 3), Rational(-1, 3)});
  SeriesSolution sol = run(b24, b24.with_defaults({}), 8, false);
  long s1 = b24.s[0];
  c.expect(sol.coeff[0][s1] == Rational(-9, 20), "a_{1,s1}");
  c.expect(sol.coeff[3][s1] == Rational(3, 20), "c_{1,s1}");
  c.expect(sol.coeff[5][s1] == Rational(3, 5), "e_{s1}");
  c.expect(sol.coeff[3][2 * s1] == Rational(-351, 5600), "c_{1,2s1}");
  c.expect(sol.coeff[5][2 * s1] == Rational(-243, 700), "e_{2s1}");

  for (const auto& [a0, b0] : std::vector<std::pair<Rational, Rational>>{
           {Rational(2), Rational(1)}, {Rational(3), Rational(5, 2)}}) {
    RecursionState st = make_recursion_state(dos(4, -1), {{"a_{1,0}", a0}, {"b0", b0}});
    advance(st, 1);
    QVector got{st.coeff[0][1], st.coeff[1][1], st.coeff[2][1], st.coeff[3][1]};
    QVector expect{Rational(0), a0 * b0 / 2, Rational(0), a0 / 2};
    c.expect(got == expect, "dos d1=4 minus step-1 coefficients, a0 = " + to_string(a0));
  }

  // circle-bundle step-2 right-hand side, derived from the recursion itself:
  // (-2 a10 c10, -4 a20 c10, 0, 2 a20 / d2, 0, 0) with c10 = a10/(2 d2)
  for (const auto& [d2, a10, a20] : std::vector<std::tuple<long, Rational, Rational>>{
           {2, Rational(1), Rational(1)}, {4, Rational(3), Rational(5)}}) {
    RecursionState st = make_recursion_state(
        balance_bb(d2), {{"a_{1,0}", a10}, {"a_{2,0}", a20}, {"b0", Rational(1)}});
    advance(st, 1);
    Rational c10 = a10 / (2 * d2);
    QVector expect{-2 * a10 * c10, -4 * a20 * c10, Rational(0), 2 * a20 / d2, Rational(0), Rational(0)};
    c.expect(rhs_at_step(st, 2) == expect, "bb step-2 right-hand side, d2 = " + std::to_string(d2));
  }
}

// ---------------------------------------------------------------- criterion 5

void criterion_compatibility_census(Check& c) {
  auto check_family = [&](const Balance& b, int expected_census) {
    try {
      long top = Rational(Rational(2) / b.Q).get_num().get_si();
      SeriesSolution sol = run(b, b.with_defaults({}), top + 2, true);
      bool all_ok = true;
      for (const ResonanceEvent& ev : sol.resonance_log) all_ok = all_ok && ev.compatible;
      c.expect(all_ok, "compatibility, " + fam_tag(b));
      c.expect(sol.free_parameter_census() == expected_census,
               "census, " + fam_tag(b) + " got " + std::to_string(sol.free_parameter_census()) +
                   " expected " + std::to_string(expected_census));
    } catch (const std::exception& e) {
      c.expect(false, "run failed for " + fam_tag(b) + ": " + e.what());
    }
  };
  for (long d1 = 2; d1 <= 6; ++d1) check_family(uno(d1), 3);
  for (long d1 : {4L, 9L})
    for (int sign : {-1, +1}) check_family(dos(d1, sign), 4);
  for (const auto& [dims, l] : std::vector<std::pair<std::vector<long>, int>>{
           {{2, 3}, 1}, {{2, 3}, 2}, {{2, 2, 2}, 2}, {{3, 4}, 1}, {{2, 2, 5}, 3}}) {
    const int r = static_cast<int>(dims.size());
    check_family(balance_multi_caseI(DimensionSpec::warped(dims), l), r - l + 3);
  }
  for (const auto& [dims, point] : std::vector<std::pair<std::vector<long>, QVector>>{
           {{2, 2}, {Rational(-1), Rational(-1)}},
           {{2, 4}, {Rational(-4, 3), Rational(-1, 3)}},
           {{4}, {Rational(-1)}},
           {{4, 2}, {Rational(-1)}},
           {{2, 2, 2}, {Rational(-4, 3), Rational(-1, 3), Rational(-1, 3)}}}) {
    const int r = static_cast<int>(dims.size());
    check_family(balance_multi_caseII(DimensionSpec::warped(dims), point), r + 3);
  }
  for (long d2 : {2L, 4L, 6L}) check_family(balance_bb(d2), 5);
}

// ---------------------------------------------------------------- criterion 6

std::vector<std::pair<Balance, ParamMap>> representative_series() {
  // ten series spanning the five families; the dos d1=9 representative is
  // taken at a0 = 2, where the tail shows its asymptotic order at t = 0.1
  // (at a0 = 1 the first two tail terms happen to cancel there)
  return {{uno(2), {}},
          {uno(3), {}},
          {uno(5), {}},
          {dos(4, -1), {}},
          {dos(4, +1), {}},
          {dos(9, -1), {{"a_{1,0}", Rational(2)}}},
          {balance_multi_caseI(DimensionSpec::warped({2, 3}), 1), {}},
          {balance_multi_caseI(DimensionSpec::warped({2, 2}), 2), {}},
          {balance_multi_caseII(DimensionSpec::warped({2, 2}), {Rational(-1), Rational(-1)}), {}},
          {balance_bb(2), {}}};
}

void criterion_residuals(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& [b, params] : representative_series()) {
    long N = default_truncation(b);
    SeriesSolution sol = run(b, b.with_defaults(params), N, true);

    // exact zeros through the guaranteed order
    auto residual = formal_residual(sol);
    for (int j = 0; j < sol.sys.n_vars(); ++j) {
      if (residual[j].empty()) continue;
      c.expect(residual[j].front().first > sol.bal.exponents[j] - 1 + Rational(N) * sol.bal.Q,
               "formal zeros, " + fam_tag(b) + " equation " + sol.sys.variables[j]);
    }

    std::vector<double> ts = {0.1, 0.05, 0.025}, rs;
    for (double t : ts) rs.push_back(ode_residual(sol, sol.sys, t));
    double slope = loglog_slope(ts, rs);
    double expected = residual_leading_exponent(sol);
    std::ostringstream what;
    what << "residual slope, " << fam_tag(b) << ": slope " << slope << " vs order " << expected;
    c.expect(std::fabs(slope - expected) <= 0.5, what.str());
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(dt <= 60.0, "criterion-6 runtime " + std::to_string(dt) + "s exceeds 60s");
}

// ---------------------------------------------------------------- criterion 7

void criterion_trajectories(Check& c) {
  std::vector<Balance> warped = {uno(3), dos(4, -1),
                                 balance_multi_caseI(DimensionSpec::warped({2, 3}), 1),
                                 balance_multi_caseII(DimensionSpec::warped({2, 2}), {Rational(-1), Rational(-1)})};
  for (const Balance& b : warped) {
    SeriesSolution sol = run(b, b.with_defaults({}), default_truncation(b), true);
    const long r = sol.sys.dims.r();
    for (double t0 : {0.05, 0.1}) {
      Trajectory traj = integrate(sol.sys, eval_series(sol, t0), t0, 1.0, 1e-10, 1e-12);
      c.expect(!traj.truncated, "integration, " + fam_tag(b));
      double g0 = eval_constraint_d(sol.sys, traj.states.front());
      double drift = 0, identity = 0;
      bool negative = true;
      for (const auto& s : traj.states) {
        drift = std::max(drift, std::fabs(eval_constraint_d(sol.sys, s) - g0));
        GeometricFrame f = geometric_frame(sol.sys, s);
        double w = s[2 * r + 1];
        identity = std::max(identity, std::fabs(f.lyapunov + 1.0 / (w * w)));
        negative = negative && f.lyapunov < 0;
      }
      std::ostringstream tag;
      tag << fam_tag(b) << " t0 = " << t0;
      c.expect(drift <= 1e-8, "constraint drift " + std::to_string(drift) + ", " + tag.str());
      c.expect(identity <= 1e-8, "phase-plane identity " + std::to_string(identity) + ", " + tag.str());
      c.expect(negative, "Lyapunov negativity, " + tag.str());
    }
  }

  // t -> 0 frame limits by Richardson extrapolation over t = 1e-2, 1e-3, 1e-4
  auto limits = [&](const SeriesSolution& sol, long i, double& xlim, double& ylim) {
    std::vector<double> xs, ys;
    for (double t : {1e-2, 1e-3, 1e-4}) {
      GeometricFrame f = geometric_frame(sol.sys, eval_series(sol, t));
      xs.push_back(f.X[i]);
      ys.push_back(f.Y[i]);
    }
    double p1, p2;
    frame_limit_powers(sol, i, false, p1, p2);
    xlim = richardson_limit(xs[0], xs[1], xs[2], p1, p2);
    frame_limit_powers(sol, i, true, p1, p2);
    ylim = richardson_limit(ys[0], ys[1], ys[2], p1, p2);
  };
  for (long d1 : {2L, 3L, 5L}) {
    SeriesSolution sol = run(uno(d1), {{"b0", Rational(1)}}, 12, true);
    double x, y;
    limits(sol, 0, x, y);
    double d = static_cast<double>(d1);
    c.expect(std::fabs(x - 1.0 / std::sqrt(d)) <= 1e-4, "frame X limit, uno d1 = " + std::to_string(d1));
    c.expect(std::fabs(y - std::sqrt(1.0 - 1.0 / d)) <= 1e-4, "frame Y limit, uno d1 = " + std::to_string(d1));
  }
  {
    Balance b = balance_multi_caseII(DimensionSpec::warped({2, 2}), {Rational(-1), Rational(-1)});
    SeriesSolution sol = run(b, b.with_defaults({}), 12, true);
    for (long i = 0; i < 2; ++i) {
      double x, y;
      limits(sol, i, x, y);
      double expect = -to_double(b.exponents[i]) * std::sqrt(2.0) / 2.0;
      c.expect(std::fabs(x - expect) <= 1e-4, "frame X limit, caseII coordinate " + std::to_string(i));
      c.expect(std::fabs(y) <= 1e-4, "frame Y limit, caseII coordinate " + std::to_string(i));
    }
  }
}

// ---------------------------------------------------------------- criterion 8

void criterion_ellipsoid(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  {
    QuadricSpec spec = make_quadric({2, 2});
    auto pts = enumerate_points(spec, 5);
    int corners = 0;
    for (const auto& p : pts) {
      c.expect(on_quadric(spec, p), "membership, (2,2) point " + vector_to_string(p));
      for (const Rational& x : p) c.expect(x != 0, "nonzero coordinates, (2,2)");
      if (abs(p[0]) == 1 && abs(p[1]) == 1) ++corners;
    }
    c.expect(corners == 4, "(2,2) contains the four unit corners");
    c.expect(pts.size() >= 12, "(2,2) has at least 8 further points at bound 5, got " +
                                   std::to_string(pts.size()));
  }
  {
    QuadricSpec spec = make_quadric({7, 7, 7});
    c.expect(enumerate_points(spec, 20).empty(), "(7,7,7) empty at bound 20");
    c.expect(modular_obstruction(spec, 8) == Obstruction::Obstructed, "(7,7,7) obstructed mod 8");
  }
  for (long d1 = 2; d1 <= 10; ++d1) {
    bool square = d1 == 4 || d1 == 9;
    c.expect(enumerate_points(make_quadric({d1}), 12).empty() != square,
             "one-factor points iff square, d1 = " + std::to_string(d1));
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(dt <= 10.0, "criterion-8 runtime " + std::to_string(dt) + "s exceeds 10s");
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<void(Check&)> fn;
  };
  std::vector<Entry> criteria = {
      {1, "determinant factorizations", criterion_determinants},
      {2, "kernel vectors", criterion_kernels},
      {3, "energy projection values", criterion_projection_values},
      {4, "hand-computed coefficients", criterion_hand_coefficients},
      {5, "compatibility and parameter census", criterion_compatibility_census},
      {6, "residual property suite", criterion_residuals},
      {7, "constraint and Lyapunov checks", criterion_trajectories},
      {8, "quadric points and obstructions", criterion_ellipsoid},
  };
  int failures = 0;
  for (auto& entry : criteria) {
    Check c;
    try {
      entry.fn(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.log << "    EXCEPTION: " << e.what() << "\n";
    }
    std::printf("[%s] criterion %d: %s\n", c.ok ? "PASS" : "FAIL", entry.id, entry.name);
    if (!c.ok) {
      std::fputs(c.log.str().c_str(), stdout);
      ++failures;
    }
  }
  return failures;
}
