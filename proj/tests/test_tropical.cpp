#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "minplus/matrix.hpp"
#include "minplus/spectral.hpp"
#include "minplus/traffic.hpp"
#include "oracles.hpp"

using namespace minplus;
using minplus::testing::enumerate_cycles;
using minplus::testing::random_connected;

namespace {

const ExtendedReal eps = ExtendedReal::eps();
const ExtendedReal ninf = ExtendedReal::neg_infinity();

}  // namespace

TEST_CASE("scalar convention table") {
  const ExtendedReal x(3.5);
  CHECK(oplus(x, x) == x);  // idempotency
  CHECK(oplus(eps, x) == x);
  CHECK(otimes(eps, x) == eps);
  CHECK(otimes(ExtendedReal::unit(), x) == x);

  CHECK(std_mul(ExtendedReal(0.0), eps) == ExtendedReal(0.0));
  CHECK(std_mul(ExtendedReal(0.0), ninf) == ExtendedReal(0.0));
  CHECK(std_mul(eps, ExtendedReal(0.0)) == ExtendedReal(0.0));
  CHECK(std_mul(ninf, ExtendedReal(0.0)) == ExtendedReal(0.0));
  CHECK(otimes(eps, ninf) == eps);
  CHECK(otimes(ninf, eps) == eps);
  CHECK(std_add(eps, ninf) == eps);

  CHECK(otimes(ninf, ninf) == ninf);
  CHECK(std_mul(ExtendedReal(2.0), eps) == eps);
  CHECK(std_mul(ExtendedReal(-2.0), eps) == ninf);
}

TEST_CASE("minplus division") {
  CHECK(ominus(ExtendedReal(5.0), ExtendedReal(3.0)) == ExtendedReal(2.0));
  CHECK(ominus(eps, ExtendedReal(3.0)) == eps);
  CHECK(ominus(ExtendedReal(3.0), eps) == ninf);
  CHECK(ominus(eps, ninf) == eps);
  CHECK(ominus(ninf, eps) == ninf);
  CHECK_THROWS_AS(ominus(eps, eps), UndefinedOperation);
  CHECK_THROWS_AS(ominus(ninf, ninf), UndefinedOperation);
  // b otimes x = a is solved by x = a - b on finite operands
  const ExtendedReal a(7.25), b(2.5);
  CHECK(otimes(b, ominus(a, b)) == a);
}

TEST_CASE("semiring laws on random triples") {
  // Dyadic samples keep float addition exact, so the laws hold bitwise.
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> u(-80, 80);
  std::uniform_int_distribution<int> pick(0, 9);
  auto sample = [&]() -> ExtendedReal {
    const int k = pick(rng);
    if (k == 0) return eps;
    if (k == 1) return ninf;
    return ExtendedReal(double(u(rng)) / 8.0);
  };
  for (int t = 0; t < 2000; ++t) {
    const ExtendedReal x = sample(), y = sample(), z = sample();
    CHECK(oplus(x, y) == oplus(y, x));
    CHECK(oplus(oplus(x, y), z) == oplus(x, oplus(y, z)));
    CHECK(oplus(x, x) == x);
    CHECK(otimes(otimes(x, y), z) == otimes(x, otimes(y, z)));
    CHECK(otimes(x, oplus(y, z)) == oplus(otimes(x, y), otimes(x, z)));
    CHECK(otimes(eps, x) == eps);
    CHECK(oplus(eps, x) == x);
  }
}

TEST_CASE("matrix product") {
  const auto a = MinPlusMatrix::from_rows({{INFINITY, 3}, {1, INFINITY}});
  SUBCASE("identity") {
    CHECK(mat_mul(a, MinPlusMatrix::identity(2)) == a);
    CHECK(mat_mul(MinPlusMatrix::identity(2), a) == a);
  }
  SUBCASE("square") {
    const auto sq = mat_mul(a, a);
    CHECK(sq == MinPlusMatrix::from_rows({{4, INFINITY}, {INFINITY, 4}}));
  }
  SUBCASE("row vector") {
    MinPlusMatrix row(1, 2, ExtendedReal(0.0));
    const auto y = mat_mul(row, a);
    CHECK(y.at(0, 0) == ExtendedReal(1.0));
    CHECK(y.at(0, 1) == ExtendedReal(3.0));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS(mat_mul(a, MinPlusMatrix(3, 3)));
  }
  SUBCASE("parallel equals serial") {
    std::mt19937_64 rng(7);
    const auto x = random_connected(rng, 64, false);
    const auto y = random_connected(rng, 64, false);
    CHECK(mat_mul(x, y) == mat_mul_serial(x, y));
  }
}

TEST_CASE("min mean cycle basics") {
  SUBCASE("self loop") {
    const auto cs = min_mean_cycle(MinPlusMatrix::from_rows({{4.5}}));
    CHECK(cs.mean_weight == 4.5);
    CHECK(cs.nodes == std::vector<std::size_t>{0});
  }
  SUBCASE("two-node cycle") {
    const auto cs =
        min_mean_cycle(MinPlusMatrix::from_rows({{INFINITY, 3}, {1, INFINITY}}));
    CHECK(cs.mean_weight == 2.0);
    CHECK(cs.length == 2);
    CHECK(cs.total_weight == 4.0);
    CHECK(cs.nodes == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("circular road m=4 n=1") {
    RoadConfig road;
    road.occupancy = {1, 0, 0, 0};
    const auto cs = min_mean_cycle(road_event_graph(road));
    CHECK(cs.mean_weight == doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("not strongly connected names a pair") {
    const auto a = MinPlusMatrix::from_rows(
        {{INFINITY, 3}, {INFINITY, 1}});  // no edge into node 0... from 0
    CHECK_THROWS_AS(min_mean_cycle(a), NotStronglyConnected);
    try {
      min_mean_cycle(a);
    } catch (const NotStronglyConnected& e) {
      CHECK(std::string(e.what()).find("node") != std::string::npos);
      CHECK(e.from != e.to);
    }
  }
}

TEST_CASE("min mean cycle equals exhaustive enumeration") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_connected(rng, size(rng), true);
    const auto karp = min_mean_cycle(a);
    const auto oracle = enumerate_cycles(a);
    REQUIRE(oracle.found);
    // Exact fraction comparison: weight/len == weight'/len'.
    CHECK(karp.total_weight * double(oracle.length) ==
          oracle.weight * double(karp.length));
  }
}

TEST_CASE("eigenvalue shift invariance") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_connected(rng, 6, true);
    const double lam = min_mean_cycle(a).mean_weight;
    const double shifted = min_mean_cycle(a.shifted(1.75)).mean_weight;
    CHECK(shifted == doctest::Approx(lam + 1.75).epsilon(1e-14));
  }
}

TEST_CASE("eigenvector") {
  SUBCASE("1x1") {
    const auto x = eigenvector_linear(MinPlusMatrix::from_rows({{2.0}}), 2.0);
    CHECK(x[0] == ExtendedReal(0.0));
  }
  SUBCASE("2x2 witness") {
    const auto a = MinPlusMatrix::from_rows({{INFINITY, 3}, {1, INFINITY}});
    const auto x = eigenvector_linear(a, 2.0);
    CHECK(x[0] == ExtendedReal(0.0));
    CHECK(x[1] == ExtendedReal(-1.0));
  }
  SUBCASE("residual zero on random matrices") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = random_connected(rng, 7, false);
      const auto cs = min_mean_cycle(a);
      const auto x = eigenvector_linear(a, cs.mean_weight);
      const auto ax = mat_vec(a, x);
      for (std::size_t i = 0; i < x.size(); ++i) {
        REQUIRE(ax[i].is_finite());
        CHECK(std::abs(ax[i].value() - (cs.mean_weight + x[i].value())) < 1e-12);
      }
    }
  }
  SUBCASE("circular road m=4 n=1 residual") {
    RoadConfig road;
    road.occupancy = {1, 0, 0, 0};
    const auto a = road_event_graph(road);
    const auto cs = min_mean_cycle(a);
    const auto x = eigenvector_linear(a, cs.mean_weight);
    const auto ax = mat_vec(a, x);
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(std::abs(ax[i].value() - (cs.mean_weight + x[i].value())) < 1e-12);
  }
}

TEST_CASE("witness cycle is recomputable") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_connected(rng, 6, false);
    const auto cs = min_mean_cycle(a);
    double total = 0.0;
    for (std::size_t i = 0; i < cs.nodes.size(); ++i) {
      const std::size_t u = cs.nodes[i];
      const std::size_t v = cs.nodes[(i + 1) % cs.nodes.size()];
      REQUIRE_FALSE(a.at(v, u).is_eps());
      total += a.at(v, u).value();
    }
    CHECK(total == cs.total_weight);
    CHECK(cs.mean_weight == total / double(cs.length));
  }
}
