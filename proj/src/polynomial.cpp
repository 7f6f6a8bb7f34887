#include "painleve/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace painleve {

void QPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPolynomial QPolynomial::monomial(const Rational& coeff, int degree) {
  if (coeff == 0) return QPolynomial();
  QVector c(degree + 1, Rational(0));
  c[degree] = coeff;
  return QPolynomial(std::move(c));
}

Rational QPolynomial::eval(const Rational& x) const {
  Rational v(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

QPolynomial QPolynomial::operator+(const QPolynomial& o) const {
  QVector c(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
  return QPolynomial(std::move(c));
}

QPolynomial QPolynomial::operator-(const QPolynomial& o) const {
  QVector c(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] -= o.c_[i];
  return QPolynomial(std::move(c));
}

QPolynomial QPolynomial::operator*(const QPolynomial& o) const {
  if (is_zero() || o.is_zero()) return QPolynomial();
  QVector c(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return QPolynomial(std::move(c));
}

QPolynomial QPolynomial::compose_affine(const Rational& a, const Rational& b) const {
  QPolynomial out;
  QPolynomial lin(QVector{b, a});
  QPolynomial pw = QPolynomial::constant(1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    out = out + pw * QPolynomial::constant(c_[i]);
    pw = pw * lin;
  }
  return out;
}

QPolynomial QPolynomial::deflate(const Rational& root) const {
  if (is_zero()) throw std::invalid_argument("deflate: zero polynomial");
  QVector q(c_.size() - 1, Rational(0));
  Rational carry = c_.back();
  for (int i = static_cast<int>(c_.size()) - 2; i >= 0; --i) {
    q[i] = carry;
    carry = c_[i] + carry * root;
  }
  if (carry != 0) throw std::invalid_argument("deflate: not a root");
  return QPolynomial(std::move(q));
}

std::string QPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rational& a = c_[k];
    if (a == 0) continue;
    if (!out.empty()) out += a > 0 ? " + " : " - ";
    else if (a < 0) out += "-";
    Rational mag = abs(a);
    bool need_coeff = (mag != 1) || k == 0;
    if (need_coeff) out += painleve::to_string(mag);
    if (k > 0) {
      if (need_coeff) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

QPolynomial interpolate(const std::vector<std::pair<Rational, Rational>>& nodes) {
  QPolynomial out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    QPolynomial basis = QPolynomial::constant(1);
    Rational denom(1);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j == i) continue;
      basis = basis * QPolynomial(QVector{-nodes[j].first, Rational(1)});
      denom *= nodes[i].first - nodes[j].first;
    }
    if (denom == 0) throw std::invalid_argument("interpolate: repeated node");
    out = out + basis * QPolynomial::constant(nodes[i].second / denom);
  }
  return out;
}

QPolynomial det_poly(const std::function<QMatrix(const Rational&)>& family, int degree_bound) {
  QMatrix probe = family(Rational(0));
  if (probe.rows() != probe.cols()) throw std::invalid_argument("det_poly: family not square");
  if (degree_bound < probe.rows())
    throw std::invalid_argument("det_poly: degree bound below matrix size");
  std::vector<std::pair<Rational, Rational>> nodes;
  nodes.reserve(degree_bound + 1);
  nodes.emplace_back(Rational(0), det(probe));
  for (int k = 1; k <= degree_bound; ++k) nodes.emplace_back(Rational(k), det(family(Rational(k))));
  return interpolate(nodes);
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> divs;
  if (n == 0) return divs;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d * d != n) divs.push_back(n / d);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

RationalRoots rational_roots(const QPolynomial& p) {
  RationalRoots out;
  out.residual = p;
  if (p.is_zero()) return out;

  QPolynomial work = p;
  // roots at zero
  int zero_mult = 0;
  while (work.degree() >= 1 && work.coefficient(0) == 0) {
    work = work.deflate(Rational(0));
    ++zero_mult;
  }
  if (zero_mult > 0) out.roots.emplace_back(Rational(0), zero_mult);

  while (work.degree() >= 1) {
    // primitive integer form of the current factor
    mpz_class den_lcm = 1;
    for (const Rational& c : work.coefficients())
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> ic;
    for (const Rational& c : work.coefficients()) {
      Rational scaled = c * Rational(den_lcm);
      ic.push_back(scaled.get_num());
    }
    Rational found;
    bool any = false;
    for (const mpz_class& pn : positive_divisors(ic.front())) {
      for (const mpz_class& qd : positive_divisors(ic.back())) {
        for (int sign : {1, -1}) {
          Rational cand(sign * pn, qd);
          cand.canonicalize();
          if (work.eval(cand) == 0) {
            found = cand;
            any = true;
            break;
          }
        }
        if (any) break;
      }
      if (any) break;
    }
    if (!any) break;
    int mult = 0;
    while (work.degree() >= 1 && work.eval(found) == 0) {
      work = work.deflate(found);
      ++mult;
    }
    out.roots.emplace_back(found, mult);
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.residual = work;
  return out;
}

}  // namespace painleve
