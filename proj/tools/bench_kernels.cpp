// Serial vs OpenMP timings for the three data-parallel kernels: the
// minplus matrix product, the min-mean-cycle table fill, and the
// fundamental-diagram sweep.

#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
static double omp_get_wtime() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}
static int omp_get_max_threads() { return 1; }
#endif

#include "minplus/matrix.hpp"
#include "minplus/spectral.hpp"
#include "minplus/traffic.hpp"

using namespace minplus;

static MinPlusMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(0.0, 10.0);
  std::uniform_real_distribution<double> p(0.0, 1.0);
  MinPlusMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a.at(i, (i + 1) % n) = ExtendedReal(w(rng));  // keep it strongly connected
    for (std::size_t j = 0; j < n; ++j)
      if (p(rng) < 0.25) a.at(i, j) = ExtendedReal(w(rng));
  }
  return a;
}

int main() {
  std::printf("# threads: %d\n", omp_get_max_threads());

  {
    const auto a = random_matrix(384, 1);
    const auto b = random_matrix(384, 2);
    double t0 = omp_get_wtime();
    const auto r1 = mat_mul_serial(a, b);
    double t1 = omp_get_wtime();
    const auto r2 = mat_mul(a, b);
    double t2 = omp_get_wtime();
    std::printf("matmul 384x384      serial %.3fs   parallel %.3fs   equal %d\n",
                t1 - t0, t2 - t1, int(r1 == r2));
  }
  {
    const auto a = random_matrix(512, 3);
    double t0 = omp_get_wtime();
    const auto c1 = min_mean_cycle_serial(a);
    double t1 = omp_get_wtime();
    const auto c2 = min_mean_cycle(a);
    double t2 = omp_get_wtime();
    std::printf("karp 512 nodes      serial %.3fs   parallel %.3fs   equal %d\n",
                t1 - t0, t2 - t1, int(c1.mean_weight == c2.mean_weight &&
                                      c1.nodes == c2.nodes));
  }
  {
    const auto grid = uniform_grid(0.0, 1.0, 41);
    SweepParams sp;
    sp.horizon = 12000;
    sp.burn_in = 1200;
    sp.parallel = false;
    double t0 = omp_get_wtime();
    const auto r1 = diagram_sweep(2, 10, grid, sp);
    double t1 = omp_get_wtime();
    sp.parallel = true;
    const auto r2 = diagram_sweep(2, 10, grid, sp);
    double t2 = omp_get_wtime();
    bool equal = r1.size() == r2.size();
    for (std::size_t i = 0; equal && i < r1.size(); ++i)
      equal = r1[i].chi_sim == r2[i].chi_sim &&
              r1[i].lambda_exact == r2[i].lambda_exact;
    std::printf("sweep 41 densities  serial %.3fs   parallel %.3fs   equal %d\n",
                t1 - t0, t2 - t1, int(equal));
  }
  return 0;
}
