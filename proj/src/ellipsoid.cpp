#include "painleve/ellipsoid.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace painleve {

QuadricSpec make_quadric(const std::vector<long>& dims) {
  if (dims.empty()) throw std::invalid_argument("quadric needs at least one dimension");
  for (long d : dims)
    if (d < 2) throw std::invalid_argument("quadric dimensions must be at least 2");
  QuadricSpec s;
  s.dims = dims;
  return s;
}

bool on_quadric(const QuadricSpec& spec, const QVector& point) {
  if (point.size() != spec.dims.size()) return false;
  Rational sum = 0;
  for (std::size_t k = 0; k < point.size(); ++k)
    sum += Rational(spec.dims[k]) * point[k] * point[k];
  return sum == spec.target;
}

namespace {

struct QVectorLess {
  bool operator()(const QVector& a, const QVector& b) const {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      int c = cmp(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return a.size() < b.size();
  }
};

long isqrt_floor(long n) {
  if (n < 0) return -1;
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// lattice solutions of sum_k d_k p_k^2 = 4 q^2 for one denominator q, as
// tuples (p_1, .., p_l, q) in lowest terms; plain integers so the hot loop
// never touches the GMP allocator
void solve_denominator(const std::vector<long>& dims, long q,
                       std::vector<std::vector<long>>& out, std::size_t& zero_hits) {
  const long l = static_cast<long>(dims.size());
  std::vector<long> p(l, 0);
  long target = 4 * q * q;

  // depth-first over coordinates, exact remainder bookkeeping
  auto rec = [&](auto&& self, long k, long rem) -> void {
    if (k == l - 1) {
      if (rem % dims[k] != 0) return;
      long sq = rem / dims[k];
      long root = isqrt_floor(sq);
      if (root < 0 || root * root != sq) return;
      for (long last : root == 0 ? std::vector<long>{0} : std::vector<long>{root, -root}) {
        p[k] = last;
        bool has_zero = false;
        for (long j = 0; j < l; ++j) has_zero = has_zero || p[j] == 0;
        if (has_zero) {
          ++zero_hits;
          continue;
        }
        long g = q;
        for (long j = 0; j < l; ++j) g = std::gcd(g, p[j]);
        std::vector<long> reduced(l + 1);
        for (long j = 0; j < l; ++j) reduced[j] = p[j] / g;
        reduced[l] = q / g;
        out.push_back(std::move(reduced));
      }
      return;
    }
    long bound = isqrt_floor(rem / dims[k]);
    for (long v = -bound; v <= bound; ++v) {
      p[k] = v;
      self(self, k + 1, rem - dims[k] * v * v);
    }
  };
  rec(rec, 0, target);
}

// lexicographic order of the rationals a tuple denotes, by cross
// multiplication (denominators are positive)
bool tuple_rational_less(const std::vector<long>& a, const std::vector<long>& b) {
  for (std::size_t j = 0; j + 1 < a.size(); ++j) {
    __int128 lhs = static_cast<__int128>(a[j]) * b.back();
    __int128 rhs = static_cast<__int128>(b[j]) * a.back();
    if (lhs != rhs) return lhs < rhs;
  }
  return false;
}

// equal rationals reduce to the identical tuple, so sorting by value groups
// duplicates adjacently and plain equality removes them
std::vector<EllipsoidPoint> materialize(std::vector<std::vector<long>>&& tuples) {
  std::sort(tuples.begin(), tuples.end(), tuple_rational_less);
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  std::vector<EllipsoidPoint> points;
  points.reserve(tuples.size());
  for (const auto& t : tuples) {
    EllipsoidPoint pt(t.size() - 1);
    for (std::size_t j = 0; j + 1 < t.size(); ++j) {
      pt[j] = Rational(t[j], t.back());
      pt[j].canonicalize();
    }
    points.push_back(std::move(pt));
  }
  return points;
}

}  // namespace

std::vector<EllipsoidPoint> enumerate_points_serial(const QuadricSpec& spec, long height_bound,
                                                    EnumerationDiagnostics* diag) {
  if (height_bound < 1) throw std::invalid_argument("height bound must be at least 1");
  std::vector<std::vector<long>> tuples;
  std::size_t zero_hits = 0;
  for (long q = 1; q <= height_bound; ++q) solve_denominator(spec.dims, q, tuples, zero_hits);
  if (diag) diag->zero_coordinate_solutions = zero_hits;
  return materialize(std::move(tuples));
}

std::vector<EllipsoidPoint> enumerate_points_serial(const QuadricSpec& spec, long height_bound) {
  return enumerate_points_serial(spec, height_bound, nullptr);
}

std::vector<EllipsoidPoint> enumerate_points(const QuadricSpec& spec, long height_bound) {
  if (height_bound < 1) throw std::invalid_argument("height bound must be at least 1");
#ifdef _OPENMP
  std::vector<std::vector<long>> tuples;
#pragma omp parallel
  {
    std::vector<std::vector<long>> local;
    std::size_t local_zero = 0;
#pragma omp for schedule(dynamic)
    for (long q = 1; q <= height_bound; ++q) solve_denominator(spec.dims, q, local, local_zero);
#pragma omp critical
    {
      tuples.insert(tuples.end(), std::make_move_iterator(local.begin()),
                    std::make_move_iterator(local.end()));
    }
  }
  return materialize(std::move(tuples));
#else
  return enumerate_points_serial(spec, height_bound);
#endif
}

namespace {

bool residue_search(const std::vector<long>& dims, long m, long first, long first_end) {
  const long l = static_cast<long>(dims.size());
  std::vector<long> sq(m);
  for (long v = 0; v < m; ++v) sq[v] = (v * v) % m;
  std::vector<long> digits(l + 1, 0);  // p_1..p_l, z
  for (long p0 = first; p0 < first_end; ++p0) {
    digits[0] = p0;
    // odometer over the remaining l digits
    for (long j = 1; j <= l; ++j) digits[j] = 0;
    while (true) {
      long g = m;
      for (long j = 0; j <= l; ++j) g = std::gcd(g, digits[j]);
      if (g == 1) {
        long lhs = 0;
        for (long j = 0; j < l; ++j) lhs = (lhs + dims[j] % m * sq[digits[j]]) % m;
        if (lhs == sq[digits[l]]) return true;
      }
      long j = 1;
      while (j <= l && ++digits[j] == m) digits[j++] = 0;
      if (j > l) break;
    }
  }
  return false;
}

}  // namespace

Obstruction modular_obstruction_serial(const QuadricSpec& spec, long modulus) {
  if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
  return residue_search(spec.dims, modulus, 0, modulus) ? Obstruction::Inconclusive
                                                        : Obstruction::Obstructed;
}

Obstruction modular_obstruction(const QuadricSpec& spec, long modulus) {
  if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
#ifdef _OPENMP
  bool found = false;
#pragma omp parallel for schedule(dynamic) reduction(|| : found)
  for (long p0 = 0; p0 < modulus; ++p0) {
    if (found) continue;
    found = found || residue_search(spec.dims, modulus, p0, p0 + 1);
  }
  return found ? Obstruction::Inconclusive : Obstruction::Obstructed;
#else
  return modular_obstruction_serial(spec, modulus);
#endif
}

SecantResult secant_family(const QuadricSpec& spec, const EllipsoidPoint& base,
                           const QVector& direction, int count) {
  const long l = spec.l();
  if (!on_quadric(spec, base)) throw std::invalid_argument("secant base is not on the quadric");
  if (direction.size() != static_cast<std::size_t>(l))
    throw std::invalid_argument("direction size mismatch");
  bool dir_zero = true;
  for (const Rational& v : direction) dir_zero = dir_zero && v == 0;
  if (dir_zero) throw std::invalid_argument("direction must be nonzero");

  SecantResult out;
  std::set<QVector, QVectorLess> seen;
  for (int k = 0; k < count; ++k) {
    QVector v = direction;
    if (k > 0) v[(k - 1) % l] += k;
    Rational quad = 0, lin = 0;
    for (long j = 0; j < l; ++j) {
      quad += Rational(spec.dims[j]) * v[j] * v[j];
      lin += Rational(2 * spec.dims[j]) * base[j] * v[j];
    }
    if (quad == 0) continue;  // zero direction variant
    Rational s = -lin / quad;
    if (s == 0) {
      out.notes.push_back("slope " + std::to_string(k) + ": line is tangent at the base point, skipped");
      continue;
    }
    QVector p(l);
    bool zero_coord = false;
    for (long j = 0; j < l; ++j) {
      p[j] = base[j] + s * v[j];
      zero_coord = zero_coord || p[j] == 0;
    }
    if (!on_quadric(spec, p)) throw std::logic_error("secant intersection left the quadric");
    if (zero_coord) {
      out.notes.push_back("slope " + std::to_string(k) + ": second intersection has a zero coordinate, skipped");
      continue;
    }
    if (seen.insert(p).second) out.points.push_back(std::move(p));
  }
  return out;
}

}  // namespace painleve
