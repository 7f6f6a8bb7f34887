#ifndef PAINLEVE_ELLIPSOID_HPP
#define PAINLEVE_ELLIPSOID_HPP

#include <string>
#include <vector>

#include "painleve/balance.hpp"
#include "painleve/rational.hpp"

namespace painleve {

/// The quadric sum_k d_k a_k^2 = target (target fixed to 4 in this project).
struct QuadricSpec {
  std::vector<long> dims;
  Rational target = 4;

  long l() const { return static_cast<long>(dims.size()); }
};

QuadricSpec make_quadric(const std::vector<long>& dims);

bool on_quadric(const QuadricSpec& spec, const QVector& point);

/// All points (p_1/q, ..., p_l/q) with nonzero coordinates and common
/// denominator q <= height_bound that satisfy the quadric exactly, found by
/// integer lattice enumeration of d_1 p_1^2 + ... + d_l p_l^2 = 4 q^2,
/// deduplicated and sorted. The OpenMP kernel splits the work across
/// denominators; the serial variant is the reference it is tested against.
std::vector<EllipsoidPoint> enumerate_points(const QuadricSpec& spec, long height_bound);
std::vector<EllipsoidPoint> enumerate_points_serial(const QuadricSpec& spec, long height_bound);

/// Count of lattice solutions discarded for having a zero coordinate
/// (points of a lower-dimensional quadric), kept for diagnostics.
struct EnumerationDiagnostics {
  std::size_t zero_coordinate_solutions = 0;
};
std::vector<EllipsoidPoint> enumerate_points_serial(const QuadricSpec& spec, long height_bound,
                                                    EnumerationDiagnostics* diag);

enum class Obstruction { Obstructed, Inconclusive };

/// Exhaustive residue search for d_1 p_1^2 + ... + d_l p_l^2 = z^2 (mod m)
/// over primitive tuples, i.e. gcd(p_1, ..., p_l, z, m) = 1. Any rational
/// point gives a primitive integer solution of the homogeneous equation, so
/// an empty search certifies that no rational point exists. z stands for
/// twice the denominator but must range over all residues: the reduction
/// that makes a solution primitive can leave it odd.
Obstruction modular_obstruction(const QuadricSpec& spec, long modulus);
Obstruction modular_obstruction_serial(const QuadricSpec& spec, long modulus);

struct SecantResult {
  std::vector<EllipsoidPoint> points;
  std::vector<std::string> notes;  // skipped tangents, zero-coordinate hits
};

/// Second intersections of the quadric with lines through `base` along
/// direction + k * e_axis for k = 0..count-1, cycling e_axis through the
/// coordinate directions. Produces unboundedly many distinct points when
/// l >= 2 and rational points are dense.
SecantResult secant_family(const QuadricSpec& spec, const EllipsoidPoint& base,
                           const QVector& direction, int count);

}  // namespace painleve

#endif
