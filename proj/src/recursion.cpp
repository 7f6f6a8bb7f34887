#include "painleve/recursion.hpp"

#include <algorithm>
#include <map>

namespace painleve {

namespace {

// grid distance of a term above its equation's minimal exponent:
// term exponent = (lambda_j - 1) + h Q with h a nonnegative integer
long term_shift(const Balance& bal, int j, const Term& t) {
  Rational expo = 0;
  if (t.v1 >= 0) expo += bal.exponents[t.v1];
  if (t.v2 >= 0) expo += bal.exponents[t.v2];
  Rational h = (expo - (bal.exponents[j] - 1)) / bal.Q;
  if (h < 0 || h.get_den() != 1)
    throw std::invalid_argument("balance is not admissible for this system (off-grid term)");
  return h.get_num().get_si();
}

struct RationalLess {
  bool operator()(const Rational& a, const Rational& b) const { return cmp(a, b) < 0; }
};

Rational coeff_at(const std::vector<QVector>& coeff, int var, long i) {
  if (i < 0 || i >= static_cast<long>(coeff[var].size())) return Rational(0);
  return coeff[var][i];
}

}  // namespace

long RecursionState::top_step() const {
  Rational s = Rational(2) / bal.Q;
  return s.get_num().get_si();
}

RecursionState make_recursion_state(const Balance& bal, const ParamMap& params) {
  RecursionState st;
  st.sys = build_system(bal);
  st.bal = bal;
  st.params = params;
  QVector lead = bal.bound_leading(params);
  st.coeff.resize(bal.n_vars());
  for (int v = 0; v < bal.n_vars(); ++v) st.coeff[v].push_back(lead[v]);
  st.computed = 0;
  // reject inadmissible balances up front
  for (int j = 0; j < st.sys.n_vars(); ++j)
    for (const Term& t : st.sys.rhs[j]) term_shift(bal, j, t);
  return st;
}

QMatrix resonance_matrix(const Balance& bal, const ParamMap& params, const Rational& step) {
  QuadraticSystem sys = build_system(bal);
  QVector lead = bal.bound_leading(params);
  const int n = sys.n_vars();
  QMatrix X(n, n);
  for (int j = 0; j < n; ++j) X.at(j, j) = bal.exponents[j] + step * bal.Q;
  for (int j = 0; j < n; ++j) {
    for (const Term& t : sys.rhs[j]) {
      if (t.v1 < 0 || term_shift(bal, j, t) != 0) continue;
      if (t.v2 < 0) {
        X.at(j, t.v1) -= t.coeff;
      } else if (t.v1 == t.v2) {
        X.at(j, t.v1) -= 2 * t.coeff * lead[t.v1];
      } else {
        X.at(j, t.v1) -= t.coeff * lead[t.v2];
        X.at(j, t.v2) -= t.coeff * lead[t.v1];
      }
    }
  }
  return X;
}

QVector rhs_at_step(const RecursionState& st, long step) {
  if (step < 1 || step > st.computed + 1)
    throw std::invalid_argument("rhs_at_step: lower coefficients missing");
  const int n = st.sys.n_vars();
  QVector v(n, Rational(0));
  for (int j = 0; j < n; ++j) {
    for (const Term& t : st.sys.rhs[j]) {
      long h = term_shift(st.bal, j, t);
      long target = step - h;
      if (t.v1 < 0) {
        if (target == 0) v[j] += t.coeff;  // constant term
        continue;
      }
      if (t.v2 < 0) {
        if (h > 0 && target >= 0) v[j] += t.coeff * coeff_at(st.coeff, t.v1, target);
        continue;
      }
      if (target < 0) continue;
      for (long m = 0; m <= target; ++m) {
        long k = target - m;
        if (h == 0 && (m == step || k == step)) continue;  // step unknowns live in the matrix
        Rational a = coeff_at(st.coeff, t.v1, m);
        if (a == 0) continue;
        Rational b = coeff_at(st.coeff, t.v2, k);
        if (b == 0) continue;
        v[j] += t.coeff * a * b;
      }
    }
  }
  return v;
}

void advance(RecursionState& st, long step, const std::optional<QVector>& resonance_choice) {
  if (step != st.computed + 1)
    throw std::invalid_argument("advance: step must be the next uncomputed step");
  QMatrix X = resonance_matrix(st.bal, st.params, Rational(step));
  QVector v = rhs_at_step(st, step);
  AffineSolutionSet sol = solve_affine(X, v);

  QVector chosen;
  if (sol.feasible() && sol.kernel_basis.empty()) {
    chosen = *sol.particular;
  } else {
    ResonanceEvent ev;
    ev.step = step;
    ev.iota = Rational(step) * st.bal.Q;
    ev.rhs = v;
    ev.kernel = sol.kernel_basis;
    ev.compatible = sol.feasible();
    if (!ev.compatible) {
      st.resonance_log.push_back(std::move(ev));
      throw CompatibilityFailure(step);
    }
    chosen = *sol.particular;
    if (resonance_choice) {
      if (resonance_choice->size() != sol.kernel_basis.size())
        throw std::invalid_argument("resonance choice size does not match kernel dimension");
      for (std::size_t k = 0; k < sol.kernel_basis.size(); ++k)
        for (int j = 0; j < st.sys.n_vars(); ++j) chosen[j] += (*resonance_choice)[k] * sol.kernel_basis[k][j];
      ev.source = "user-choice";
    } else {
      ev.source = "default-zero";
    }
    ev.chosen = chosen;
    st.resonance_log.push_back(std::move(ev));
  }
  for (int j = 0; j < st.sys.n_vars(); ++j) st.coeff[j].push_back(chosen[j]);
  st.computed = step;
}

namespace {

Rational constraint_base_exponent(const QuadraticSystem& sys, const Balance& bal) {
  bool first = true;
  Rational base = 0;
  for (const Term& t : sys.constraint) {
    Rational e = 0;
    if (t.v1 >= 0) e += bal.exponents[t.v1];
    if (t.v2 >= 0) e += bal.exponents[t.v2];
    if (first || e < base) base = e;
    first = false;
  }
  return base;
}

// coefficient of t^(base + j Q) in G along the coefficient table
Rational constraint_grid_coefficient(const QuadraticSystem& sys, const Balance& bal,
                                     const std::vector<QVector>& coeff, const Rational& base, long j) {
  Rational out = 0;
  for (const Term& t : sys.constraint) {
    Rational e = 0;
    if (t.v1 >= 0) e += bal.exponents[t.v1];
    if (t.v2 >= 0) e += bal.exponents[t.v2];
    Rational hq = (e - base) / bal.Q;
    if (hq.get_den() != 1) throw std::logic_error("constraint term off the exponent grid");
    long target = j - hq.get_num().get_si();
    if (target < 0) continue;
    if (t.v1 < 0) {
      if (target == 0) out += t.coeff;
    } else if (t.v2 < 0) {
      out += t.coeff * coeff_at(coeff, t.v1, target);
    } else {
      for (long m = 0; m <= target; ++m) {
        Rational a = coeff_at(coeff, t.v1, m);
        if (a == 0) continue;
        Rational b = coeff_at(coeff, t.v2, target - m);
        if (b == 0) continue;
        out += t.coeff * a * b;
      }
    }
  }
  return out;
}

}  // namespace

Rational project_H0(RecursionState& st) {
  const long top = st.top_step();
  if (st.computed != top)
    throw std::invalid_argument("project_H0: recursion must stand exactly at the top step");
  ResonanceEvent* ev = nullptr;
  for (ResonanceEvent& e : st.resonance_log)
    if (e.step == top) ev = &e;
  if (!ev || !ev->compatible)
    throw std::invalid_argument("project_H0: no compatible resonance at the top step");
  if (ev->kernel.size() != 1)
    throw DegenerateProjection("top resonance kernel is not one-dimensional");
  if (ev->source != "default-zero")
    throw std::invalid_argument("project_H0: top-step parameter already chosen");

  QVector ref = top_resonance_reference(st.bal, st.params);
  if (!proportional(ev->kernel[0], ref))
    throw std::logic_error("reference direction is not the computed kernel");

  const Rational base = constraint_base_exponent(st.sys, st.bal);
  Rational j0q = -base / st.bal.Q;
  if (j0q.get_den() != 1 || j0q < 0) throw std::logic_error("t^0 is off the constraint grid");
  const long j0 = j0q.get_num().get_si();

  const Rational t0 = constraint_grid_coefficient(st.sys, st.bal, st.coeff, base, j0);
  for (int v = 0; v < st.sys.n_vars(); ++v) st.coeff[v][top] += ref[v];
  const Rational t1 = constraint_grid_coefficient(st.sys, st.bal, st.coeff, base, j0);
  for (int v = 0; v < st.sys.n_vars(); ++v) st.coeff[v][top] -= ref[v];
  if (t0 == t1) throw DegenerateProjection("constraint coefficient does not depend on the resonance parameter");

  Rational lambda = t0 / (t0 - t1);
  for (int v = 0; v < st.sys.n_vars(); ++v) st.coeff[v][top] = ev->chosen[v] + lambda * ref[v];
  for (int v = 0; v < st.sys.n_vars(); ++v) ev->chosen[v] = st.coeff[v][top];
  ev->lambda = lambda;
  ev->lambda_set = true;
  ev->source = "h0-projection";
  return lambda;
}

SeriesSolution run(const Balance& bal, const ParamMap& params, long N, bool auto_h0) {
  RecursionState st = make_recursion_state(bal, params);
  const long top = st.top_step();
  SeriesSolution sol;
  for (long i = 1; i <= N; ++i) {
    advance(st, i);
    if (auto_h0 && i == top) {
      sol.lambda = project_H0(st);
      sol.h0_projected = true;
      // everything below t^0 must already vanish once the projection is set
      const Rational base = constraint_base_exponent(st.sys, st.bal);
      for (long j = 0; j <= st.computed; ++j) {
        if (base + Rational(j) * st.bal.Q > 0) break;
        if (constraint_grid_coefficient(st.sys, st.bal, st.coeff, base, j) != 0)
          throw std::logic_error("constraint coefficient survives below the projection order");
      }
    }
  }
  sol.sys = std::move(st.sys);
  sol.bal = std::move(st.bal);
  sol.params = std::move(st.params);
  sol.N = N;
  sol.coeff = std::move(st.coeff);
  sol.resonance_log = std::move(st.resonance_log);
  return sol;
}

std::vector<std::pair<Rational, Rational>> constraint_series(const SeriesSolution& sol, long through) {
  if (through > sol.N)
    throw std::invalid_argument("constraint_series: range beyond the computed order");
  const Rational base = constraint_base_exponent(sol.sys, sol.bal);
  std::vector<std::pair<Rational, Rational>> out;
  for (long j = 0; j <= through; ++j)
    out.emplace_back(base + Rational(j) * sol.bal.Q,
                     constraint_grid_coefficient(sol.sys, sol.bal, sol.coeff, base, j));
  return out;
}

Rational lowest_constraint_exponent(const SeriesSolution& sol) {
  return constraint_base_exponent(sol.sys, sol.bal);
}

std::vector<std::vector<std::pair<Rational, Rational>>> formal_residual(const SeriesSolution& sol) {
  const int n = sol.sys.n_vars();
  std::vector<std::vector<std::pair<Rational, Rational>>> out(n);
  for (int j = 0; j < n; ++j) {
    std::map<Rational, Rational, RationalLess> acc;
    for (long i = 0; i <= sol.N; ++i) {
      const Rational& a = sol.coeff[j][i];
      if (a == 0) continue;
      Rational e = sol.exponent(j, i);
      acc[e - 1] += e * a;
    }
    for (const Term& t : sol.sys.rhs[j]) {
      if (t.v1 < 0) {
        acc[Rational(0)] -= t.coeff;
      } else if (t.v2 < 0) {
        for (long m = 0; m <= sol.N; ++m) {
          const Rational& a = sol.coeff[t.v1][m];
          if (a != 0) acc[sol.exponent(t.v1, m)] -= t.coeff * a;
        }
      } else {
        for (long m = 0; m <= sol.N; ++m) {
          const Rational& a = sol.coeff[t.v1][m];
          if (a == 0) continue;
          for (long k = 0; k <= sol.N; ++k) {
            const Rational& b = sol.coeff[t.v2][k];
            if (b == 0) continue;
            acc[sol.exponent(t.v1, m) + sol.exponent(t.v2, k)] -= t.coeff * a * b;
          }
        }
      }
    }
    for (const auto& [e, c] : acc)
      if (c != 0) out[j].emplace_back(e, c);
  }
  return out;
}

std::string root_class_name(RootClass c) {
  switch (c) {
    case RootClass::Top: return "top";
    case RootClass::MeaninglessNegative: return "meaningless-negative";
    default: return "ordinary";
  }
}

ResonanceReport resonance_report(const Balance& bal, const ParamMap& params, int degree_bound) {
  const int n = bal.n_vars();
  const int bound = std::max(degree_bound, n);
  auto family = [&](const Rational& s) { return resonance_matrix(bal, params, s); };
  ResonanceReport rep;
  rep.det_in_step = det_poly(family, bound);
  rep.det_in_iota = rep.det_in_step.compose_affine(Rational(1) / bal.Q, Rational(0));
  RationalRoots rr = rational_roots(rep.det_in_iota);
  rep.roots = rr.roots;
  rep.residual = rr.residual;
  Rational top;
  bool has_top = false;
  for (const auto& [root, mult] : rep.roots) {
    if (root > 0 && (!has_top || root > top)) {
      top = root;
      has_top = true;
    }
  }
  for (const auto& [root, mult] : rep.roots) {
    if (has_top && root == top) rep.classification.push_back(RootClass::Top);
    else if (root < -1) rep.classification.push_back(RootClass::MeaninglessNegative);
    else rep.classification.push_back(RootClass::Ordinary);
  }
  return rep;
}

long default_truncation(const Balance& bal) {
  Rational n = Rational(12) / bal.Q;
  return n.get_num().get_si() / n.get_den().get_si() + (n.get_den() == 1 ? 0 : 1);
}

int SeriesSolution::free_parameter_census() const {
  int census = static_cast<int>(bal.free_parameters.size()) + 1;  // leading data + movable origin
  for (const ResonanceEvent& ev : resonance_log)
    if (ev.compatible) census += static_cast<int>(ev.kernel.size());
  return census;
}

}  // namespace painleve
