#pragma once

#include <cstdint>
#include <vector>

#include "minplus/homogeneous.hpp"

namespace minplus {

/// The chaotic 2-state worked example: x_1' = x_2,
/// x_2' = min(3 x_2 - 2 x_1, 2 + 2 x_1 - x_2).  Its eigenproblem reduces
/// to y = min(2y, 2 - 2y), the tent map.
HomogeneousMap tent_system();

/// One tent step on doubles.
double tent_map(double y);

struct Rational {
  long long num = 0, den = 1;
  double value() const { return double(num) / double(den); }
};

/// Exact growth rate of the tent lift from y0 = num/den: iterates the
/// scaled integer recursion z -> min(2z, 2q - 2z), detects the eventual
/// cycle, and averages over it.  Float trajectories are useless here
/// (every dyadic start collapses onto the fixed point 0 after finitely
/// many doublings), hence the integer lattice.
struct TentOrbit {
  std::vector<long long> cycle;  // z values over one period
  long long den = 1;
  std::size_t transient = 0;
  Rational growth;               // mean of y over the cycle
};

TentOrbit tent_exact_orbit(long long num, long long den);

/// Monte Carlo growth estimate on the lattice {0, 1/den, ..., 1}:
/// chi = (1/K) sum_k y^k with an exact integer accumulator.
struct TentMonteCarlo {
  double chi = 0.0;
  long long z0 = 0, den = 1;
  std::vector<double> samples;  // y^k, k = 0..K-1
};

TentMonteCarlo tent_monte_carlo(std::size_t steps, std::uint64_t seed,
                                long long den = 100000);

/// Kolmogorov-Smirnov distance of samples against uniform[0,1].
double ks_distance_uniform(std::vector<double> samples);

}  // namespace minplus
