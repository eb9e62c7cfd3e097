#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "minplus/linalg.hpp"
#include "minplus/pwa.hpp"

namespace minplus {

using Vec = std::vector<double>;

/// Additively 1-homogeneous map x -> f(x).  When the dynamics come from a
/// PWA expression graph the symbolic form is kept alongside the evaluator
/// so the eigenproblem reduction and region enumeration can use it.
struct HomogeneousMap {
  std::size_t dim = 0;
  std::function<Vec(const Vec&)> eval;
  std::optional<PwaMap> symbolic;

  static HomogeneousMap from_pwa(PwaMap m);
};

/// Samples f(x + lambda) against f(x) + lambda on random probes.
bool homogeneity_probe(const HomogeneousMap& f, int probes = 100,
                       double tol = 1e-9, std::uint64_t seed = 0x9e3779b9);

struct TrajectoryRecord {
  std::vector<Vec> states;        // x^0 .. x^K (possibly strided)
  std::size_t stride = 1;
  std::vector<Vec> normalized;    // y^k: x^k_i - x^k_1, i = 2..n
  Vec increments;                 // h(y^k) = f_1(x^k) - x^k_1 = x_1^{k+1} - x_1^k
  bool bounded = false;
  double max_norm_y = 0.0;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t step, std::size_t coord);
  std::size_t step, coord;
};

/// Runs K steps, recording every `stride`-th state plus normalized states
/// and first-coordinate increments for every step.  A state escaping to
/// +-inf or NaN raises DivergenceError naming step and coordinate.
TrajectoryRecord iterate(const HomogeneousMap& f, const Vec& x0,
                         std::size_t K, std::size_t stride = 1,
                         double bound = 1e9);

struct GrowthRateEstimate {
  double chi = 0.0;        // headline: first coordinate
  Vec per_coordinate;
  double spread = 0.0;     // max - min over coordinates
  std::size_t burn_in = 0, horizon = 0;
  bool spread_flagged = false;
};

/// chi_i = (x_i^K - x_i^K0) / (K - K0) after endpoint differencing.
GrowthRateEstimate growth_rate(const HomogeneousMap& f, const Vec& x0,
                               std::size_t K0, std::size_t K,
                               double spread_tol = 1e-6);

/// Fixed-point form of the eigenproblem: g_{i-1}(y) = f_i(0,y) - f_1(0,y)
/// and lambda(y) = f_1(0,y).  Any fixed point y* of g yields the eigenpair
/// (lambda(y*), (0, y*)).
struct ReducedEigenProblem {
  std::size_t dim = 0;  // dimension of y
  std::function<Vec(const Vec&)> g;
  std::function<double(const Vec&)> lambda;
  std::optional<PwaMap> g_symbolic;
  std::optional<PwaNode> lambda_symbolic;
};

ReducedEigenProblem reduce_eigenproblem(const HomogeneousMap& f);

enum class Stability { attracting, repelling, marginal };

struct FixedPoint {
  Vec y;
  double residual = 0.0;
  Stability stability = Stability::marginal;
  double slope_radius = 0.0;       // spectral radius of the active region
  std::size_t regions_touching = 1;
};

struct FixedPointOptions {
  std::size_t enumeration_dim_cap = 4;
  std::size_t max_assignments = 1 << 20;
  double tol = 1e-9;
  std::size_t iteration_budget = 20000;
  double damping = 0.5;
  std::uint64_t seed = 1234567;
};

struct FixedPointResult {
  std::vector<FixedPoint> points;
  bool exhaustive = false;  // false when enumeration was infeasible
  std::string note;
};

/// Region enumeration for small dimensions (each selection gives a linear
/// system; solutions kept only if the selection is active there), with a
/// damped-iteration fallback above the cap.
FixedPointResult fixed_point_solve(const ReducedEigenProblem& p,
                                   const FixedPointOptions& opts = {});

/// Cesaro average of Dirac masses at the normalized states.
struct EmpiricalMeasure {
  std::vector<Vec> samples;
  double weight() const { return samples.empty() ? 0.0 : 1.0 / double(samples.size()); }
};

EmpiricalMeasure empirical_measure(const TrajectoryRecord& traj);

double measure_average(const EmpiricalMeasure& m,
                       const std::function<double(const Vec&)>& h);

/// Eigenvalue of an affine-standard homogeneous map f(x) = Ax + b with
/// unit row sums: lambda = p.b for the normalized left eigenvector p of A
/// at eigenvalue 1.  Fails when the kernel of A - I is not 1-dimensional.
struct AffineEigenResult {
  bool ok = false;
  double lambda = 0.0;
  Vec left_eigenvector;
  std::string error;
};

AffineEigenResult eigen_affine_standard(const DenseMatrix& a, const Vec& b);

}  // namespace minplus
