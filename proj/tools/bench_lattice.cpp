// Benchmark of the OpenMP lattice kernels against their serial references:
// rational point enumeration on the quadric and the modular obstruction scan.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "painleve/ellipsoid.hpp"

using namespace painleve;

namespace {

template <typename F>
double time_of(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  long bound = argc > 1 ? std::stol(argv[1]) : 200;
  long modulus = argc > 2 ? std::stol(argv[2]) : 64;
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  QuadricSpec spec = make_quadric({2, 3, 4});
  std::vector<EllipsoidPoint> serial_pts, parallel_pts;
  double t_serial = time_of([&] { serial_pts = enumerate_points_serial(spec, bound); });
  double t_parallel = time_of([&] { parallel_pts = enumerate_points(spec, bound); });
  std::printf("enumerate dims=(2,3,4) bound=%ld: %zu points, serial %.3fs, parallel %.3fs, speedup %.2fx, equal=%s\n",
              bound, serial_pts.size(), t_serial, t_parallel, t_serial / t_parallel,
              serial_pts == parallel_pts ? "yes" : "NO");

  QuadricSpec obstructed = make_quadric({7, 7, 7});
  Obstruction v_serial{}, v_parallel{};
  double o_serial = time_of([&] { v_serial = modular_obstruction_serial(obstructed, modulus); });
  double o_parallel = time_of([&] { v_parallel = modular_obstruction(obstructed, modulus); });
  std::printf("obstruction dims=(7,7,7) mod %ld: serial %.3fs, parallel %.3fs, speedup %.2fx, equal=%s\n",
              modulus, o_serial, o_parallel, o_serial / o_parallel,
              v_serial == v_parallel ? "yes" : "NO");
  return serial_pts == parallel_pts && v_serial == v_parallel ? 0 : 1;
}
