#include "minplus/tent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace minplus {

HomogeneousMap tent_system() {
  PwaMap m;
  m.dim_in = 2;
  m.comps.push_back(pwa_affine(0.0, {0.0, 1.0}));
  m.comps.push_back(pwa_min({pwa_affine(0.0, {-2.0, 3.0}),
                             pwa_affine(2.0, {2.0, -1.0})}));
  return HomogeneousMap::from_pwa(std::move(m));
}

double tent_map(double y) { return std::min(2.0 * y, 2.0 - 2.0 * y); }

namespace {
long long tent_step_int(long long z, long long q) {
  return std::min(2 * z, 2 * q - 2 * z);
}
}  // namespace

TentOrbit tent_exact_orbit(long long num, long long den) {
  if (den <= 0 || num < 0 || num > den)
    throw std::invalid_argument("tent orbit needs y0 = num/den in [0,1]");
  TentOrbit orbit;
  orbit.den = den;
  std::unordered_map<long long, std::size_t> first_seen;
  std::vector<long long> seq;
  long long z = num;
  while (!first_seen.count(z)) {
    first_seen.emplace(z, seq.size());
    seq.push_back(z);
    z = tent_step_int(z, den);
  }
  const std::size_t start = first_seen.at(z);
  orbit.transient = start;
  orbit.cycle.assign(seq.begin() + start, seq.end());
  long long sum = 0;
  for (long long v : orbit.cycle) sum += v;
  const long long d = den * (long long)orbit.cycle.size();
  const long long g = std::gcd(sum == 0 ? d : sum, d);
  orbit.growth = {sum / g, d / g};
  return orbit;
}

TentMonteCarlo tent_monte_carlo(std::size_t steps, std::uint64_t seed,
                                long long den) {
  TentMonteCarlo mc;
  mc.den = den;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> u(0, den - 1);
  mc.z0 = u(rng);
  long long z = mc.z0;
  long long acc = 0;
  mc.samples.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    mc.samples.push_back(double(z) / double(den));
    acc += z;
    z = tent_step_int(z, den);
  }
  mc.chi = double(acc) / (double(den) * double(steps));
  return mc;
}

double ks_distance_uniform(std::vector<double> s) {
  std::sort(s.begin(), s.end());
  const double n = double(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    d = std::max(d, std::abs(double(i + 1) / n - s[i]));
    d = std::max(d, std::abs(s[i] - double(i) / n));
  }
  return d;
}

}  // namespace minplus
