#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "painleve/json_io.hpp"

using namespace painleve;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitIncompatible = 3;
constexpr int kExitValidation = 4;

std::vector<long> parse_dims(const std::string& csv) {
  std::vector<long> dims;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) dims.push_back(std::stol(item));
  return dims;
}

QVector parse_point(const std::string& csv) {
  QVector point;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) point.push_back(parse_rational(item));
  return point;
}

struct Selection {
  std::string system = "warped";
  std::string dims_csv;
  long d2 = 0;
  std::string family;
  std::string sign = "minus";
  int l = 0;
  std::string point_csv;
  std::string a0, b0;
  std::vector<std::string> sets;
  std::string out;
};

void add_selector_flags(CLI::App* cmd, Selection& sel, bool with_params) {
  cmd->add_option("--system", sel.system, "warped or bb")->check(CLI::IsMember({"warped", "bb"}));
  cmd->add_option("--dims", sel.dims_csv, "factor dimensions, comma separated");
  cmd->add_option("--d2", sel.d2, "base dimension for the bb system");
  cmd->add_option("--family", sel.family, "uno, dos, caseI, caseII or bb");
  cmd->add_option("--sign", sel.sign, "dos only: sign of the x1 exponent")
      ->check(CLI::IsMember({"plus", "minus"}));
  cmd->add_option("--l", sel.l, "caseI/caseII: number of singular factors");
  cmd->add_option("--point", sel.point_csv, "caseII: rational point on the ellipsoid, e.g. -4/3,-1/3");
  if (with_params) {
    cmd->add_option("--a0", sel.a0, "binds a_{1,0} (rational, floats rejected)");
    cmd->add_option("--b0", sel.b0, "binds b0 (rational, floats rejected)");
    cmd->add_option("--set", sel.sets, "extra parameter binding name=value, repeatable");
  }
  cmd->add_option("--out", sel.out, "also write the JSON report to this file");
}

Balance select_balance(const Selection& sel) {
  if (sel.system == "bb") {
    long d2 = sel.d2 ? sel.d2 : (sel.dims_csv.empty() ? 0 : parse_dims(sel.dims_csv).at(0));
    if (d2 == 0) throw std::invalid_argument("bb system needs --d2");
    if (!sel.family.empty() && sel.family != "bb")
      throw std::invalid_argument("the bb system has only the bb family");
    return balance_bb(d2);
  }
  if (sel.dims_csv.empty()) throw std::invalid_argument("warped system needs --dims");
  std::vector<long> dims = parse_dims(sel.dims_csv);
  if (sel.family == "uno") {
    if (dims.size() != 1) throw std::invalid_argument("family uno has exactly one factor");
    return balances_one_factor(dims[0]).balances.at(0);
  }
  if (sel.family == "dos") {
    if (dims.size() != 1) throw std::invalid_argument("family dos has exactly one factor");
    BalanceSet set = balances_one_factor(dims[0]);
    for (const Balance& b : set.balances)
      if (b.family == "dos" && (b.sign > 0) == (sel.sign == "plus")) return b;
    std::string why = set.notes.empty() ? "no dos balance" : set.notes.front();
    throw std::invalid_argument(why);
  }
  if (sel.family == "caseI") {
    int l = sel.l ? sel.l : static_cast<int>(dims.size());
    return balance_multi_caseI(DimensionSpec::warped(dims), l);
  }
  if (sel.family == "caseII") {
    if (sel.point_csv.empty()) throw std::invalid_argument("caseII needs --point");
    return balance_multi_caseII(DimensionSpec::warped(dims), parse_point(sel.point_csv));
  }
  throw std::invalid_argument("unknown or missing --family");
}

ParamMap bindings(const Selection& sel, const Balance& bal) {
  ParamMap params;
  if (!sel.a0.empty()) params["a_{1,0}"] = parse_rational(sel.a0);
  if (!sel.b0.empty()) params["b0"] = parse_rational(sel.b0);
  for (const std::string& kv : sel.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects name=value: " + kv);
    params[kv.substr(0, eq)] = parse_rational(kv.substr(eq + 1));
  }
  for (const auto& [name, value] : params) {
    bool known = false;
    for (const std::string& free : bal.free_parameters) known = known || free == name;
    if (!known) throw std::invalid_argument("not a free parameter of this family: " + name);
  }
  return bal.with_defaults(params);
}

void emit(const Json& report, const std::string& out) {
  std::string payload = report.dump(2);
  std::cout << payload << "\n";
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::invalid_argument("cannot write " + out);
    f << payload << "\n";
  }
}

Json header(const std::string& command, const Balance& bal, const ParamMap& params) {
  Json out;
  out["schema"] = 1;
  out["command"] = command;
  out["system"] = system_kind_name(bal.system);
  out["family"] = bal.family;
  out["dims"] = bal.dims.dims;
  if (bal.family == "dos") out["sign"] = bal.sign > 0 ? "plus" : "minus";
  Json p;
  for (const auto& [name, value] : params) p[name] = rational_json(value);
  out["params"] = std::move(p);
  return out;
}

int cmd_resonances(const Selection& sel) {
  Balance bal = select_balance(sel);
  ParamMap params = bindings(sel, bal);
  Json report = header("resonances", bal, params);
  report["balance"] = balance_json(bal);
  report["report"] = resonance_report_json(resonance_report(bal, params));
  emit(report, sel.out);
  return 0;
}

int cmd_series(const Selection& sel, long N, bool h0, bool n_given) {
  Balance bal = select_balance(sel);
  ParamMap params = bindings(sel, bal);
  long steps = n_given ? N : default_truncation(bal);
  SeriesSolution sol = run(bal, params, steps, h0);
  Json report = header("series", bal, params);
  report["N"] = steps;
  report["h0"] = h0;
  report["census"] = sol.free_parameter_census();
  report["series"] = series_json(sol);
  Json table = Json::array();
  for (const auto& [expo, coeff] : constraint_series(sol, steps)) {
    Json row;
    row["exponent"] = rational_json(expo);
    row["coeff"] = rational_json(coeff);
    table.push_back(std::move(row));
  }
  report["constraint_table"] = std::move(table);
  emit(report, sel.out);
  return 0;
}

struct CheckList {
  Json checks = Json::array();
  bool all_pass = true;

  void add(const std::string& name, bool pass, const Json& detail) {
    Json c;
    c["name"] = name;
    c["pass"] = pass;
    c["detail"] = detail;
    checks.push_back(std::move(c));
    all_pass = all_pass && pass;
  }
};

void expected_frame_limits(const Balance& bal, std::vector<double>& ex, std::vector<double>& ey) {
  const long r = bal.r();
  ex.assign(r, 0.0);
  ey.assign(r, 0.0);
  for (int j = 0; j < bal.l; ++j) {
    double d = static_cast<double>(bal.dims.dims[j]);
    if (bal.family == "uno" || bal.family == "caseI") {
      double e0 = to_double(bal.e0);
      ex[j] = std::sqrt(d) / e0;
      ey[j] = std::sqrt(d * (e0 - 1)) / e0;
    } else {
      ex[j] = -to_double(bal.exponents[j]) * std::sqrt(d) / 2.0;
      ey[j] = 0.0;
    }
  }
}

int cmd_validate(const Selection& sel, const std::string& series_file, long N, bool h0, bool n_given,
                 const std::string& csv_out, const std::string& traj_out) {
  SeriesSolution sol;
  if (!series_file.empty()) {
    std::ifstream f(series_file);
    if (!f) throw std::invalid_argument("cannot read " + series_file);
    Json j = Json::parse(f);
    sol = series_from_json(j.contains("series") ? j["series"] : j);
  } else {
    Balance bal = select_balance(sel);
    ParamMap params = bindings(sel, bal);
    sol = run(bal, params, n_given ? N : default_truncation(bal), h0);
  }

  CheckList checks;
  checks.add("balance-valid", validate_balance(sol.sys, sol.bal).pass, Json());

  {  // exact zeros of the formal residual through the computed order
    bool ok = true;
    Json detail;
    auto residual = formal_residual(sol);
    for (int j = 0; j < sol.sys.n_vars() && ok; ++j) {
      if (residual[j].empty()) continue;
      Rational guaranteed = sol.bal.exponents[j] - 1 + Rational(sol.N) * sol.bal.Q;
      if (residual[j].front().first <= guaranteed) {
        ok = false;
        detail["equation"] = sol.sys.variables[j];
        detail["exponent"] = rational_json(residual[j].front().first);
      }
    }
    checks.add("formal-zeros", ok, detail);
  }

  {  // exact constraint coefficients
    bool ok = true;
    Json detail;
    for (const auto& [expo, coeff] : constraint_series(sol, sol.N)) {
      bool must_vanish = sol.h0_projected || expo != 0;
      if (must_vanish && coeff != 0) {
        ok = false;
        detail["first_nonzero_exponent"] = rational_json(expo);
        detail["value"] = rational_json(coeff);
        break;
      }
    }
    checks.add("constraint-coefficients", ok, detail);
  }

  {  // residual decay order
    std::vector<double> ts = residual_slope_grid(sol), rs;
    for (double t : ts) rs.push_back(ode_residual(sol, sol.sys, t));
    double slope = loglog_slope(ts, rs);
    double expected = residual_leading_exponent(sol);
    Json detail;
    detail["t_grid"] = ts;
    detail["slope"] = slope;
    detail["expected"] = expected;
    checks.add("residual-slope", std::fabs(slope - expected) <= 0.5, detail);
  }

  const bool warped = sol.sys.kind == SystemKind::Warped;
  Trajectory exported;
  for (double t0 : {0.05, 0.1}) {
    Trajectory traj = integrate(sol.sys, eval_series(sol, t0), t0, 1.0, 1e-10, 1e-12);
    std::string tag = t0 == 0.05 ? "t0=0.05" : "t0=0.1";
    {
      double g0 = eval_constraint_d(sol.sys, traj.states.front());
      double drift = 0;
      for (const auto& s : traj.states)
        drift = std::max(drift, std::fabs(eval_constraint_d(sol.sys, s) - g0));
      Json detail;
      detail["drift"] = drift;
      checks.add("constraint-drift " + tag, !traj.truncated && drift <= 1e-8, detail);
    }
    if (warped) {
      double worst = 0;
      bool negative = true;
      const long r = sol.sys.dims.r();
      for (const auto& s : traj.states) {
        GeometricFrame f = geometric_frame(sol.sys, s);
        double w = s[2 * r + 1];
        worst = std::max(worst, std::fabs(f.lyapunov + 1.0 / (w * w)));
        negative = negative && f.lyapunov < 0;
      }
      Json detail;
      detail["identity_error"] = worst;
      detail["lyapunov_negative"] = negative;
      checks.add("lyapunov " + tag, worst <= 1e-8 && negative, detail);
    }
    exported = std::move(traj);
  }

  if (warped) {  // frame limits as t -> 0
    std::vector<double> ex, ey;
    expected_frame_limits(sol.bal, ex, ey);
    const long r = sol.sys.dims.r();
    double worst = 0;
    for (long i = 0; i < r; ++i) {
      std::vector<double> xs, ys;
      for (double t : {1e-2, 1e-3, 1e-4}) {
        GeometricFrame f = geometric_frame(sol.sys, eval_series(sol, t));
        xs.push_back(f.X[i]);
        ys.push_back(f.Y[i]);
      }
      double p1, p2;
      frame_limit_powers(sol, i, false, p1, p2);
      worst = std::max(worst, std::fabs(richardson_limit(xs[0], xs[1], xs[2], p1, p2) - ex[i]));
      frame_limit_powers(sol, i, true, p1, p2);
      worst = std::max(worst, std::fabs(richardson_limit(ys[0], ys[1], ys[2], p1, p2) - ey[i]));
    }
    Json detail;
    detail["max_error"] = worst;
    checks.add("frame-limits", worst <= 1e-4, detail);
  }

  if (!csv_out.empty()) {
    std::ofstream f(csv_out);
    f << trajectory_csv(sol.sys, exported);
  }
  if (!traj_out.empty()) {
    std::ofstream f(traj_out);
    f << trajectory_json(exported).dump(2) << "\n";
  }

  Json report = header("validate", sol.bal, sol.params);
  report["N"] = sol.N;
  report["h0_projected"] = sol.h0_projected;
  report["estimated_radius"] = estimate_radius(sol);
  report["checks"] = std::move(checks.checks);
  report["pass"] = checks.all_pass;
  emit(report, sel.out);
  return checks.all_pass ? 0 : kExitValidation;
}

int cmd_ellipsoid(const std::string& dims_csv, long bound, const std::vector<long>& moduli,
                  const std::string& out) {
  QuadricSpec spec = make_quadric(parse_dims(dims_csv));
  std::vector<EllipsoidPoint> points = enumerate_points(spec, bound);
  Json report;
  report["schema"] = 1;
  report["command"] = "ellipsoid";
  report["dims"] = spec.dims;
  report["bound"] = bound;
  report["count"] = points.size();
  report["points"] = points_json(points);
  Json obs = Json::array();
  for (long m : moduli) {
    Json o;
    o["modulus"] = m;
    o["verdict"] =
        modular_obstruction(spec, m) == Obstruction::Obstructed ? "obstructed" : "inconclusive";
    obs.push_back(std::move(o));
  }
  report["obstructions"] = std::move(obs);
  emit(report, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact series analysis of steady soliton ODE systems"};
  app.require_subcommand(1);

  Selection sel_res, sel_ser, sel_val;
  long N = 0;
  bool h0 = false;
  std::string series_file, csv_out, traj_out;
  std::string ell_dims;
  long ell_bound = 10;
  std::vector<long> moduli;

  CLI::App* res = app.add_subcommand("resonances", "determinant factorization and resonance roots");
  add_selector_flags(res, sel_res, true);

  CLI::App* ser = app.add_subcommand("series", "run the coefficient recursion");
  add_selector_flags(ser, sel_ser, true);
  CLI::Option* n_opt = ser->add_option("--N", N, "truncation order (steps)");
  ser->add_flag("--h0", h0, "choose the top resonance parameter on the energy surface");

  CLI::App* val = app.add_subcommand("validate", "numeric validation of a series");
  add_selector_flags(val, sel_val, true);
  val->add_option("--series", series_file, "series JSON produced by the series command");
  CLI::Option* vn_opt = val->add_option("--N", N, "truncation order (steps)");
  val->add_flag("--h0", h0, "project onto the energy surface before validating");
  val->add_option("--trajectory-csv", csv_out, "export the last integrated trajectory as CSV");
  val->add_option("--trajectory-json", traj_out, "export the last integrated trajectory as JSON");

  CLI::App* ell = app.add_subcommand("ellipsoid", "rational points and modular obstructions");
  ell->add_option("--dims", ell_dims, "quadric dimensions, comma separated")->required();
  ell->add_option("--bound", ell_bound, "denominator height bound");
  ell->add_option("--moduli", moduli, "moduli to test for obstructions")->delimiter(',');
  std::string ell_out;
  ell->add_option("--out", ell_out, "also write the JSON report to this file");

  try {
    app.parse(argc, argv);
    if (res->parsed()) return cmd_resonances(sel_res);
    if (ser->parsed()) return cmd_series(sel_ser, N, h0, n_opt->count() > 0);
    if (val->parsed())
      return cmd_validate(sel_val, series_file, N, h0, vn_opt->count() > 0, csv_out, traj_out);
    if (ell->parsed()) return cmd_ellipsoid(ell_dims, ell_bound, moduli, ell_out);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  } catch (const CompatibilityFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIncompatible;
  } catch (const DegenerateProjection& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIncompatible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return 0;
}
