#pragma once

// Test-only oracles, deliberately independent of the library's solver
// paths: simple-cycle enumeration for the cycle-mean eigenvalue, plus the
// random strongly-connected generators the suites share.

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "minplus/matrix.hpp"

namespace minplus::testing {

struct BestCycle {
  double weight = 0.0;
  std::size_t length = 0;
  std::vector<std::size_t> nodes;
  bool found = false;

  bool better(double w, std::size_t l, const std::vector<std::size_t>& ns) const {
    if (!found) return true;
    const double lhs = w * double(length);
    const double rhs = weight * double(l);
    if (lhs != rhs) return lhs < rhs;
    return ns < nodes;
  }
};

// Enumerates every simple cycle (each one rooted at its smallest node) by
// DFS and keeps the best mean under exact cross-multiplied comparison.
inline BestCycle enumerate_cycles(const MinPlusMatrix& a) {
  const std::size_t n = a.rows();
  BestCycle best;
  std::vector<std::size_t> path;
  std::vector<char> on_path(n, 0);
  double path_weight = 0.0;

  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start,
                                                          std::size_t u) {
    for (std::size_t v = 0; v < n; ++v) {
      const ExtendedReal w = a.at(v, u);  // edge u -> v
      if (w.is_eps()) continue;
      if (v == start) {
        const double total = path_weight + w.value();
        std::vector<std::size_t> cyc = path;
        const auto smallest = std::min_element(cyc.begin(), cyc.end());
        std::rotate(cyc.begin(), smallest, cyc.end());
        if (best.better(total, cyc.size(), cyc)) {
          best.found = true;
          best.weight = total;
          best.length = cyc.size();
          best.nodes = cyc;
        }
      } else if (v > start && !on_path[v]) {
        on_path[v] = 1;
        path.push_back(v);
        path_weight += w.value();
        dfs(start, v);
        path_weight -= w.value();
        path.pop_back();
        on_path[v] = 0;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path = {s};
    std::fill(on_path.begin(), on_path.end(), 0);
    on_path[s] = 1;
    path_weight = 0.0;
    dfs(s, s);
  }
  return best;
}

// Random strongly connected matrix (a Hamiltonian ring plus extra edges).
// Dyadic weights (multiples of 1/8) keep every walk sum exact in doubles.
inline MinPlusMatrix random_connected(std::mt19937_64& rng, std::size_t n,
                                      bool dyadic) {
  std::uniform_real_distribution<double> uw(0.0, 8.0);
  std::uniform_int_distribution<int> di(0, 64);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  MinPlusMatrix a(n, n);
  auto weight = [&] { return dyadic ? double(di(rng)) / 8.0 : uw(rng); };
  for (std::size_t i = 0; i < n; ++i)
    a.at((i + 1) % n, i) = ExtendedReal(weight());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (up(rng) < 0.3) a.at(i, j) = ExtendedReal(weight());
  return a;
}

}  // namespace minplus::testing
