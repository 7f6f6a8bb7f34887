#include "painleve/json_io.hpp"

#include <sstream>
#include <stdexcept>

namespace painleve {

Json rational_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw std::invalid_argument("expected a rational literal");
  return parse_rational(j.get<std::string>());
}

Json vector_json(const QVector& v) {
  Json out = Json::array();
  for (const Rational& x : v) out.push_back(rational_json(x));
  return out;
}

QVector vector_from_json(const Json& j) {
  QVector out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

Json matrix_json(const QMatrix& m) {
  Json out = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(rational_json(m.at(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

QMatrix matrix_from_json(const Json& j) {
  int rows = static_cast<int>(j.size());
  int cols = rows ? static_cast<int>(j[0].size()) : 0;
  QMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols) throw std::invalid_argument("ragged matrix");
    for (int c = 0; c < cols; ++c) m.at(r, c) = rational_from_json(j[r][c]);
  }
  return m;
}

namespace {

Json term_json(const Term& t, int n_vars) {
  Json out;
  out["coeff"] = rational_json(t.coeff);
  Json expo = Json::array();
  for (int v = 0; v < n_vars; ++v) {
    int e = (t.v1 == v) + (t.v2 == v);
    expo.push_back(e);
  }
  out["exponents"] = std::move(expo);
  return out;
}

Json linexpr_json(const LinExpr& e) {
  if (e.is_constant()) return rational_json(e.constant);
  Json out;
  out["param"] = e.param;
  out["scale"] = rational_json(e.scale);
  if (e.constant != 0) out["constant"] = rational_json(e.constant);
  return out;
}

}  // namespace

Json system_json(const QuadraticSystem& sys) {
  Json out;
  out["kind"] = system_kind_name(sys.kind);
  out["dims"] = sys.dims.dims;
  out["variables"] = sys.variables;
  Json rhs = Json::array();
  for (const auto& eq : sys.rhs) {
    Json terms = Json::array();
    for (const Term& t : eq) terms.push_back(term_json(t, sys.n_vars()));
    rhs.push_back(std::move(terms));
  }
  out["rhs"] = std::move(rhs);
  Json g = Json::array();
  for (const Term& t : sys.constraint) g.push_back(term_json(t, sys.n_vars()));
  out["constraint"] = std::move(g);
  return out;
}

Json balance_json(const Balance& bal) {
  Json out;
  out["system"] = system_kind_name(bal.system);
  out["family"] = bal.family;
  out["dims"] = bal.dims.dims;
  if (bal.family == "dos") out["sign"] = bal.sign > 0 ? "plus" : "minus";
  out["l"] = bal.l;
  out["Q"] = rational_json(bal.Q);
  out["exponents"] = vector_json(bal.exponents);
  Json coeffs = Json::array();
  for (const LinExpr& c : bal.coefficients) coeffs.push_back(linexpr_json(c));
  out["coefficients"] = std::move(coeffs);
  out["free_parameters"] = bal.free_parameters;
  out["factor_order"] = bal.factor_order;
  if (!bal.s.empty()) out["s"] = bal.s;
  return out;
}

Balance balance_from_json(const Json& j) {
  const std::string family = j.at("family").get<std::string>();
  std::vector<long> dims = j.at("dims").get<std::vector<long>>();
  if (family == "uno") {
    BalanceSet set = balances_one_factor(dims.at(0));
    return set.balances.at(0);
  }
  if (family == "dos") {
    BalanceSet set = balances_one_factor(dims.at(0));
    const bool plus = j.at("sign").get<std::string>() == "plus";
    for (Balance& b : set.balances)
      if (b.family == "dos" && (b.sign > 0) == plus) return b;
    throw std::invalid_argument("no rational dos balance for this dimension");
  }
  if (family == "caseI")
    return balance_multi_caseI(DimensionSpec::warped(dims), j.at("l").get<int>());
  if (family == "caseII") {
    int l = j.at("l").get<int>();
    QVector exps = vector_from_json(j.at("exponents"));
    QVector point(exps.begin(), exps.begin() + l);
    return balance_multi_caseII(DimensionSpec::warped(dims), point);
  }
  if (family == "bb") return balance_bb(dims.at(0));
  throw std::invalid_argument("unknown balance family: " + family);
}

namespace {

Json resonance_event_json(const ResonanceEvent& ev) {
  Json out;
  out["step"] = ev.step;
  out["iota"] = rational_json(ev.iota);
  out["compatible"] = ev.compatible;
  out["rhs"] = vector_json(ev.rhs);
  Json kernel = Json::array();
  for (const QVector& k : ev.kernel) kernel.push_back(vector_json(k));
  out["kernel"] = std::move(kernel);
  if (!ev.chosen.empty()) out["chosen"] = vector_json(ev.chosen);
  if (ev.lambda_set) out["lambda"] = rational_json(ev.lambda);
  out["source"] = ev.source;
  return out;
}

}  // namespace

Json series_json(const SeriesSolution& sol) {
  Json out;
  out["schema"] = 1;
  out["balance"] = balance_json(sol.bal);
  Json params;
  for (const auto& [name, value] : sol.params) params[name] = rational_json(value);
  out["params"] = std::move(params);
  out["Q"] = rational_json(sol.bal.Q);
  out["N"] = sol.N;
  out["h0_projected"] = sol.h0_projected;
  if (sol.h0_projected) out["lambda"] = rational_json(sol.lambda);
  Json vars = Json::array();
  for (int v = 0; v < sol.sys.n_vars(); ++v) {
    Json jv;
    jv["name"] = sol.sys.variables[v];
    Json coeffs = Json::array();
    for (long i = 0; i <= sol.N; ++i) {
      Json c;
      c["exponent"] = rational_json(sol.exponent(v, i));
      c["coeff"] = rational_json(sol.coeff[v][i]);
      coeffs.push_back(std::move(c));
    }
    jv["coefficients"] = std::move(coeffs);
    vars.push_back(std::move(jv));
  }
  out["variables"] = std::move(vars);
  Json res = Json::array();
  for (const ResonanceEvent& ev : sol.resonance_log) res.push_back(resonance_event_json(ev));
  out["resonances"] = std::move(res);
  return out;
}

SeriesSolution series_from_json(const Json& j) {
  SeriesSolution sol;
  sol.bal = balance_from_json(j.at("balance"));
  sol.sys = build_system(sol.bal);
  for (const auto& [name, value] : j.at("params").items()) sol.params[name] = rational_from_json(value);
  sol.N = j.at("N").get<long>();
  sol.h0_projected = j.at("h0_projected").get<bool>();
  if (sol.h0_projected) sol.lambda = rational_from_json(j.at("lambda"));
  const Json& vars = j.at("variables");
  if (static_cast<int>(vars.size()) != sol.sys.n_vars())
    throw std::invalid_argument("series file: variable count mismatch");
  sol.coeff.assign(sol.sys.n_vars(), QVector());
  for (int v = 0; v < sol.sys.n_vars(); ++v) {
    const Json& coeffs = vars[v].at("coefficients");
    if (static_cast<long>(coeffs.size()) != sol.N + 1)
      throw std::invalid_argument("series file: coefficient count mismatch");
    for (long i = 0; i <= sol.N; ++i) {
      sol.coeff[v].push_back(rational_from_json(coeffs[i].at("coeff")));
      if (rational_from_json(coeffs[i].at("exponent")) != sol.exponent(v, i))
        throw std::invalid_argument("series file: exponent grid mismatch");
    }
  }
  return sol;
}

Json resonance_report_json(const ResonanceReport& rep) {
  Json out;
  out["det"] = rep.det_in_iota.to_string("iota");
  out["det_coefficients"] = vector_json(rep.det_in_iota.coefficients());
  Json roots = Json::array();
  for (std::size_t i = 0; i < rep.roots.size(); ++i) {
    Json r;
    r["root"] = rational_json(rep.roots[i].first);
    r["multiplicity"] = rep.roots[i].second;
    r["class"] = root_class_name(rep.classification[i]);
    roots.push_back(std::move(r));
  }
  out["roots"] = std::move(roots);
  out["residual"] = rep.residual.to_string("iota");
  out["residual_coefficients"] = vector_json(rep.residual.coefficients());
  return out;
}

Json points_json(const std::vector<EllipsoidPoint>& points) {
  Json out = Json::array();
  for (const EllipsoidPoint& p : points) out.push_back(vector_json(p));
  return out;
}

Json trajectory_json(const Trajectory& traj) {
  Json out;
  out["times"] = traj.times;
  out["states"] = traj.states;
  Json stats;
  stats["steps"] = traj.stats.steps;
  stats["rejected"] = traj.stats.rejected;
  stats["rtol"] = traj.stats.rtol;
  stats["atol"] = traj.stats.atol;
  out["stats"] = std::move(stats);
  out["truncated"] = traj.truncated;
  if (traj.truncated) out["truncation_reason"] = traj.truncation_reason;
  return out;
}

std::string trajectory_csv(const QuadraticSystem& sys, const Trajectory& traj) {
  std::ostringstream os;
  os << "t";
  for (const std::string& v : sys.variables) os << "," << v;
  os << "\n";
  os.precision(17);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << traj.times[i];
    for (double x : traj.states[i]) os << "," << x;
    os << "\n";
  }
  return os.str();
}

}  // namespace painleve
