#include "painleve/balance.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace painleve {

LinExpr LinExpr::fixed(Rational v) {
  LinExpr e;
  e.constant = std::move(v);
  return e;
}

LinExpr LinExpr::scaled(std::string name, Rational k) {
  LinExpr e;
  e.param = std::move(name);
  e.scale = std::move(k);
  return e;
}

Rational LinExpr::eval(const ParamMap& params) const {
  Rational v = constant;
  if (!param.empty()) {
    auto it = params.find(param);
    if (it == params.end()) throw std::invalid_argument("unbound free parameter: " + param);
    v += scale * it->second;
  }
  return v;
}

std::string LinExpr::to_string() const {
  if (is_constant()) return painleve::to_string(constant);
  std::string out;
  if (scale == 1) out = param;
  else out = painleve::to_string(scale) + "*" + param;
  if (constant != 0) out += " + " + painleve::to_string(constant);
  return out;
}

QVector Balance::bound_leading(const ParamMap& params) const {
  QVector lead;
  lead.reserve(coefficients.size());
  for (const LinExpr& c : coefficients) lead.push_back(c.eval(params));
  return lead;
}

ParamMap Balance::with_defaults(const ParamMap& params) const {
  ParamMap full = params;
  for (const std::string& name : free_parameters)
    if (!full.count(name)) full[name] = 1;
  return full;
}

namespace {

std::string a_param(long i) { return "a_{" + std::to_string(i) + ",0}"; }

}  // namespace

Balance balance_multi_caseI(const DimensionSpec& dims, int l) {
  if (dims.kind != SystemKind::Warped) throw std::invalid_argument("caseI: warped products only");
  const long r = dims.r();
  if (l < 1 || l > r) throw std::invalid_argument("caseI: l out of range");
  Balance b;
  b.system = SystemKind::Warped;
  b.dims = dims;
  b.factor_order.resize(r);
  std::iota(b.factor_order.begin(), b.factor_order.end(), 0);
  b.family = "caseI";
  b.l = l;
  b.Q = 1;
  Rational e0 = 0;
  for (int k = 0; k < l; ++k) e0 += dims.dims[k];
  b.e0 = e0;
  b.exponents.assign(2 * r + 2, Rational(0));
  b.coefficients.assign(2 * r + 2, LinExpr::fixed(0));
  for (int j = 0; j < r; ++j) {
    bool singular = j < l;
    b.exponents[j] = singular ? Rational(-2) : Rational(0);
    b.exponents[r + 1 + j] = singular ? Rational(-1) : Rational(1);
    if (singular) {
      b.coefficients[j] = LinExpr::fixed(Rational(dims.dims[j]) * (e0 - 1));
      b.coefficients[r + 1 + j] = LinExpr::fixed(1);
      b.s.push_back(0);
    } else {
      b.coefficients[j] = LinExpr::scaled(a_param(j + 1), 1);
      b.coefficients[r + 1 + j] =
          LinExpr::scaled(a_param(j + 1), Rational(1) / (Rational(dims.dims[j]) * (e0 + 1)));
      b.free_parameters.push_back(a_param(j + 1));
    }
  }
  b.exponents[r] = e0;                       // x_{r+1}
  b.exponents[2 * r + 1] = Rational(-1);     // u_{r+1}
  b.coefficients[r] = LinExpr::scaled("b0", 1);
  b.coefficients[2 * r + 1] = LinExpr::fixed(e0);
  b.free_parameters.push_back("b0");
  return b;
}

BalanceSet balances_one_factor(long d1) {
  if (d1 < 2) throw std::invalid_argument("factor dimension must be at least 2");
  BalanceSet out;

  Balance uno = balance_multi_caseI(DimensionSpec::warped({d1}), 1);
  uno.family = "uno";
  out.balances.push_back(std::move(uno));

  if (!is_perfect_square(d1)) {
    out.notes.push_back("dos balances exist only with exponent -/+ 2/sqrt(" + std::to_string(d1) +
                        "), which is irrational; excluded from the rational series grid");
    return out;
  }
  long root = exact_sqrt(d1);
  for (int sign : {-1, +1}) {
    Balance b;
    b.system = SystemKind::Warped;
    b.dims = DimensionSpec::warped({d1});
    b.factor_order = {0};
    b.family = "dos";
    b.sign = sign;
    b.l = 1;
    b.Q = rational_from_long(2, root);
    b.e0 = 1;
    Rational alpha = rational_from_long(2 * sign, root);
    b.exponents = {alpha, Rational(1), Rational(-1), Rational(-1)};
    b.coefficients = {LinExpr::scaled(a_param(1), 1), LinExpr::scaled("b0", 1),
                      LinExpr::fixed(Rational(-sign, root)), LinExpr::fixed(1)};
    b.free_parameters = {a_param(1), "b0"};
    Rational s = (alpha + 2) / b.Q;
    b.s = {s.get_num().get_si()};
    out.balances.push_back(std::move(b));
  }
  return out;
}

Balance balance_multi_caseII(const DimensionSpec& dims, const EllipsoidPoint& point) {
  if (dims.kind != SystemKind::Warped) throw std::invalid_argument("caseII: warped products only");
  const long r = dims.r();
  const long l = static_cast<long>(point.size());
  if (l < 1 || l > r) throw std::invalid_argument("caseII: point length out of range");
  Rational sum = 0;
  for (long j = 0; j < l; ++j) {
    if (point[j] == 0) throw std::invalid_argument("caseII: point coordinates must be nonzero");
    sum += Rational(dims.dims[j]) * point[j] * point[j];
  }
  if (sum != 4) throw std::invalid_argument("caseII: point is not on the ellipsoid");

  // singular factors first, ascending exponent; ties keep caller order
  std::vector<int> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.begin() + l,
                   [&](int a, int bdx) { return point[a] < point[bdx]; });

  Balance b;
  b.system = SystemKind::Warped;
  b.factor_order = order;
  b.family = "caseII";
  b.l = static_cast<int>(l);
  b.e0 = 1;
  std::vector<long> d_sorted(r);
  QVector alpha_sorted(l);
  for (long j = 0; j < r; ++j) d_sorted[j] = dims.dims[order[j]];
  for (long j = 0; j < l; ++j) alpha_sorted[j] = point[order[j]];
  b.dims = DimensionSpec::warped(d_sorted);

  QVector grid = alpha_sorted;
  grid.push_back(Rational(2));
  b.Q = rational_gcd(grid);

  b.exponents.assign(2 * r + 2, Rational(0));
  b.coefficients.assign(2 * r + 2, LinExpr::fixed(0));
  for (long j = 0; j < r; ++j) {
    bool singular = j < l;
    b.exponents[j] = singular ? alpha_sorted[j] : Rational(0);
    b.exponents[r + 1 + j] = singular ? Rational(-1) : Rational(1);
    b.coefficients[j] = LinExpr::scaled(a_param(j + 1), 1);
    b.free_parameters.push_back(a_param(j + 1));
    if (singular) {
      b.coefficients[r + 1 + j] = LinExpr::fixed(-alpha_sorted[j] / 2);
      Rational s = (alpha_sorted[j] + 2) / b.Q;
      if (s.get_den() != 1) throw std::invalid_argument("caseII: exponent off the rational grid");
      b.s.push_back(s.get_num().get_si());
    } else {
      b.coefficients[r + 1 + j] = LinExpr::scaled(a_param(j + 1), Rational(1, 2 * dims.dims[order[j]]));
    }
  }
  b.exponents[r] = 1;
  b.exponents[2 * r + 1] = Rational(-1);
  b.coefficients[r] = LinExpr::scaled("b0", 1);
  b.coefficients[2 * r + 1] = LinExpr::fixed(1);
  b.free_parameters.push_back("b0");
  return b;
}

Balance balance_bb(long d2) {
  DimensionSpec dims = DimensionSpec::berard_bergery(d2);
  Balance b;
  b.system = SystemKind::BerardBergery;
  b.dims = dims;
  b.factor_order = {0};
  b.family = "bb";
  b.l = 1;
  b.Q = 1;
  b.e0 = 1;
  b.exponents = {Rational(0), Rational(2), Rational(1), Rational(1), Rational(-1), Rational(-1)};
  b.coefficients = {LinExpr::scaled(a_param(1), 1),
                    LinExpr::scaled(a_param(2), 1),
                    LinExpr::scaled("b0", 1),
                    LinExpr::scaled(a_param(1), Rational(1, 2 * d2)),
                    LinExpr::fixed(-1),
                    LinExpr::fixed(1)};
  b.free_parameters = {a_param(1), a_param(2), "b0"};
  b.s = {0};
  return b;
}

QuadraticSystem build_system(const Balance& bal) {
  if (bal.system == SystemKind::Warped) return build_warped_system(bal.dims);
  return build_bb_system(bal.dims.d2());
}

BalanceVerdict validate_balance(const QuadraticSystem& sys, const Balance& bal) {
  BalanceVerdict verdict;
  if (sys.n_vars() != bal.n_vars() || sys.kind != bal.system) {
    verdict.pass = false;
    verdict.detail = "balance does not match the system shape";
    return verdict;
  }

  // exponent-lattice admissibility: each term must sit a nonnegative integer
  // number of grid steps above the equation's minimal exponent
  for (int j = 0; j < sys.n_vars(); ++j) {
    for (const Term& t : sys.rhs[j]) {
      Rational expo = 0;
      if (t.v1 >= 0) expo += bal.exponents[t.v1];
      if (t.v2 >= 0) expo += bal.exponents[t.v2];
      Rational h = (expo - (bal.exponents[j] - 1)) / bal.Q;
      if (h < 0 || h.get_den() != 1) {
        verdict.pass = false;
        verdict.equation = j;
        verdict.detail = "equation " + sys.variables[j] + "': term exponent " + to_string(expo) +
                         " below or off the grid of " + to_string(bal.exponents[j] - 1);
        return verdict;
      }
    }
  }

  // leading-coefficient cancellation, free parameters on a 3-point grid
  const auto& names = bal.free_parameters;
  std::size_t grid = 1;
  for (std::size_t i = 0; i < names.size(); ++i) grid *= 3;
  for (std::size_t g = 0; g < grid; ++g) {
    ParamMap params;
    std::size_t v = g;
    for (const std::string& n : names) {
      params[n] = Rational(static_cast<long>(v % 3) + 1);
      v /= 3;
    }
    QVector lead = bal.bound_leading(params);
    for (int j = 0; j < sys.n_vars(); ++j) {
      Rational residual = bal.exponents[j] * lead[j];
      for (const Term& t : sys.rhs[j]) {
        Rational expo = 0;
        if (t.v1 >= 0) expo += bal.exponents[t.v1];
        if (t.v2 >= 0) expo += bal.exponents[t.v2];
        if (expo != bal.exponents[j] - 1) continue;  // subdominant
        Rational m = t.coeff;
        if (t.v1 >= 0) m *= lead[t.v1];
        if (t.v2 >= 0) m *= lead[t.v2];
        residual -= m;
      }
      if (residual != 0) {
        verdict.pass = false;
        verdict.equation = j;
        verdict.detail = "equation " + sys.variables[j] + "': leading coefficients do not cancel";
        return verdict;
      }
    }
  }
  return verdict;
}

QVector top_resonance_reference(const Balance& bal, const ParamMap& params) {
  QVector lead = bal.bound_leading(params);
  const long r = bal.r();
  auto b0 = [&] { return params.at("b0"); };

  if (bal.family == "uno" || bal.family == "caseI") {
    const Rational& e0 = bal.e0;
    QVector w(bal.n_vars(), Rational(0));
    for (long j = 0; j < r; ++j) {
      bool singular = j < bal.l;
      w[j] = singular ? Rational(bal.dims.dims[j]) * (e0 - 1) / e0 : Rational(0);
      w[r + 1 + j] = singular ? Rational(-Rational(1) / e0) : Rational(-2 * lead[r + 1 + j] / (e0 + 3));
    }
    w[r] = b0();
    w[2 * r + 1] = 2;
    return w;
  }
  if (bal.family == "dos") {
    long root = exact_sqrt(bal.dims.dims[0]);
    Rational a0 = lead[0];
    if (bal.sign < 0 && bal.dims.dims[0] == 4)
      return {a0, 2 * b0(), Rational(-1), Rational(4)};
    Rational as(-bal.sign, 1);
    return {as * a0 / root, b0(), -as * Rational(1, root), Rational(2)};
  }
  if (bal.family == "caseII") {
    QVector w(bal.n_vars(), Rational(0));
    for (long j = 0; j < r; ++j) {
      bool singular = j < bal.l;
      w[j] = singular ? lead[j] * lead[r + 1 + j] : Rational(0);
      w[r + 1 + j] = singular ? Rational(-lead[r + 1 + j]) : Rational(-lead[r + 1 + j] / 2);
    }
    w[r] = b0();
    w[2 * r + 1] = 2;
    return w;
  }
  if (bal.family == "bb") {
    return {Rational(0), -lead[1], b0(), -lead[3] / 2, Rational(1), Rational(2)};
  }
  throw std::invalid_argument("unknown balance family: " + bal.family);
}

}  // namespace painleve
