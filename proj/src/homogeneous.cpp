#include "minplus/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

namespace minplus {

HomogeneousMap HomogeneousMap::from_pwa(PwaMap m) {
  auto shared = std::make_shared<const PwaMap>(std::move(m));
  HomogeneousMap f;
  f.dim = shared->dim_in;
  f.symbolic = *shared;  // nodes are shared_ptrs, this copy is shallow
  f.eval = [shared](const Vec& x) { return shared->eval(x); };
  return f;
}

bool homogeneity_probe(const HomogeneousMap& f, int probes, double tol,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-5.0, 5.0);
  std::uniform_real_distribution<double> ul(-3.0, 3.0);
  for (int t = 0; t < probes; ++t) {
    Vec x(f.dim);
    for (auto& v : x) v = ux(rng);
    const double lam = ul(rng);
    Vec shifted = x;
    for (auto& v : shifted) v += lam;
    const Vec a = f.eval(shifted);
    const Vec b = f.eval(x);
    for (std::size_t i = 0; i < f.dim; ++i)
      if (std::abs(a[i] - (b[i] + lam)) > tol) return false;
  }
  return true;
}

DivergenceError::DivergenceError(std::size_t s, std::size_t c)
    : std::runtime_error("trajectory diverged at step " + std::to_string(s) +
                         ", coordinate " + std::to_string(c)),
      step(s),
      coord(c) {}

TrajectoryRecord iterate(const HomogeneousMap& f, const Vec& x0,
                         std::size_t K, std::size_t stride, double bound) {
  TrajectoryRecord rec;
  rec.stride = stride == 0 ? 1 : stride;
  Vec x = x0;
  rec.states.push_back(x);
  double max_y = 0.0;
  auto push_normalized = [&](const Vec& s) {
    Vec y;
    y.reserve(s.size() > 0 ? s.size() - 1 : 0);
    for (std::size_t i = 1; i < s.size(); ++i) {
      y.push_back(s[i] - s[0]);
      max_y = std::max(max_y, std::abs(y.back()));
    }
    rec.normalized.push_back(std::move(y));
  };
  push_normalized(x);
  for (std::size_t k = 0; k < K; ++k) {
    Vec nx = f.eval(x);
    for (std::size_t i = 0; i < nx.size(); ++i)
      if (!std::isfinite(nx[i])) throw DivergenceError(k + 1, i);
    rec.increments.push_back(nx[0] - x[0]);
    x = std::move(nx);
    if ((k + 1) % rec.stride == 0 || k + 1 == K) {
      rec.states.push_back(x);
      push_normalized(x);
    }
  }
  rec.max_norm_y = max_y;
  rec.bounded = max_y <= bound;
  return rec;
}

GrowthRateEstimate growth_rate(const HomogeneousMap& f, const Vec& x0,
                               std::size_t K0, std::size_t K,
                               double spread_tol) {
  if (K <= K0) throw std::invalid_argument("growth_rate: need K > K0");
  Vec x = x0, at_k0 = x0;
  for (std::size_t k = 0; k < K; ++k) {
    if (k == K0) at_k0 = x;
    Vec nx = f.eval(x);
    for (std::size_t i = 0; i < nx.size(); ++i)
      if (!std::isfinite(nx[i])) throw DivergenceError(k + 1, i);
    x = std::move(nx);
  }
  GrowthRateEstimate est;
  est.burn_in = K0;
  est.horizon = K;
  est.per_coordinate.resize(x.size());
  const double span = double(K - K0);
  for (std::size_t i = 0; i < x.size(); ++i)
    est.per_coordinate[i] = (x[i] - at_k0[i]) / span;
  est.chi = est.per_coordinate.empty() ? 0.0 : est.per_coordinate[0];
  const auto [mn, mx] = std::minmax_element(est.per_coordinate.begin(),
                                            est.per_coordinate.end());
  est.spread = est.per_coordinate.empty() ? 0.0 : (*mx - *mn);
  est.spread_flagged = est.spread > spread_tol;
  return est;
}

ReducedEigenProblem reduce_eigenproblem(const HomogeneousMap& f) {
  if (f.dim == 0) throw std::invalid_argument("reduce: empty map");
  ReducedEigenProblem p;
  p.dim = f.dim - 1;
  auto eval = f.eval;
  const std::size_t n = f.dim;
  p.g = [eval, n](const Vec& y) {
    Vec x(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) x[i] = y[i - 1];
    const Vec fx = eval(x);
    Vec g(n - 1);
    for (std::size_t i = 1; i < n; ++i) g[i - 1] = fx[i] - fx[0];
    return g;
  };
  p.lambda = [eval, n](const Vec& y) {
    Vec x(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) x[i] = y[i - 1];
    return eval(x)[0];
  };
  if (f.symbolic) {
    const PwaMap restricted = restrict_first_zero(*f.symbolic);
    PwaMap g;
    g.dim_in = restricted.dim_in;
    const PwaNode f1 = restricted.comps[0];
    for (std::size_t i = 1; i < restricted.comps.size(); ++i)
      g.comps.push_back(
          pwa_combine(0.0, {{1.0, restricted.comps[i]}, {-1.0, f1}}));
    p.g_symbolic = std::move(g);
    p.lambda_symbolic = f1;
  }
  return p;
}

namespace {

bool already_found(const std::vector<FixedPoint>& pts, const Vec& y,
                   double tol) {
  for (const auto& fp : pts) {
    double d = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
      d = std::max(d, std::abs(fp.y[i] - y[i]));
    if (d <= tol) return true;
  }
  return false;
}

double eval_residual(const ReducedEigenProblem& p, const Vec& y) {
  const Vec gy = p.g(y);
  double r = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    r = std::max(r, std::abs(gy[i] - y[i]));
  return r;
}

FixedPoint classify(Vec y, double residual, const DenseMatrix& slope) {
  FixedPoint fp;
  fp.y = std::move(y);
  fp.residual = residual;
  fp.slope_radius = spectral_radius_estimate(slope);
  if (fp.slope_radius < 1.0 - 1e-6)
    fp.stability = Stability::attracting;
  else if (fp.slope_radius > 1.0 + 1e-6)
    fp.stability = Stability::repelling;
  else
    fp.stability = Stability::marginal;
  return fp;
}

}  // namespace

FixedPointResult fixed_point_solve(const ReducedEigenProblem& p,
                                   const FixedPointOptions& opts) {
  FixedPointResult res;
  const std::size_t n = p.dim;
  if (n == 0) {
    // Constant map: the unique fixed point is the empty vector.
    res.exhaustive = true;
    FixedPoint fp;
    fp.stability = Stability::attracting;
    res.points.push_back(fp);
    return res;
  }

  if (p.g_symbolic && n <= opts.enumeration_dim_cap) {
    const PwaMap& g = *p.g_symbolic;
    const auto nodes = collect_choice_nodes(g);
    std::size_t total = 1;
    bool overflow = false;
    for (const auto* nd : nodes) {
      total *= nd->alts.size();
      if (total > opts.max_assignments) {
        overflow = true;
        break;
      }
    }
    if (!overflow) {
      RegionAssignment choice(nodes.size(), 0);
      for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          choice[i] = rem % nodes[i]->alts.size();
          rem /= nodes[i]->alts.size();
        }
        const auto affine = resolve_affine(g, nodes, choice);
        DenseMatrix m(n, n);
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = affine[i].p[j] - (i == j ? 1.0 : 0.0);
          rhs[i] = -affine[i].c;
        }
        const auto sol = solve_linear(m, rhs);
        if (!sol) continue;  // singular region system; iteration may still find it
        if (!assignment_active_at(g, nodes, choice, *sol, opts.tol)) continue;
        const double r = eval_residual(p, *sol);
        if (r > opts.tol) continue;
        if (already_found(res.points, *sol, 1e-7)) {
          for (auto& fp : res.points) {
            double d = 0.0;
            for (std::size_t i = 0; i < n; ++i)
              d = std::max(d, std::abs(fp.y[i] - (*sol)[i]));
            if (d <= 1e-7) ++fp.regions_touching;
          }
          continue;
        }
        DenseMatrix slope(n, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) slope.at(i, j) = affine[i].p[j];
        res.points.push_back(classify(*sol, r, slope));
      }
      res.exhaustive = true;
      std::sort(res.points.begin(), res.points.end(),
                [](const FixedPoint& a, const FixedPoint& b) {
                  return std::lexicographical_compare(a.y.begin(), a.y.end(),
                                                      b.y.begin(), b.y.end());
                });
      return res;
    }
    res.note = "region enumeration infeasible; fell back to iteration";
  } else if (!p.g_symbolic) {
    res.note = "no symbolic form; damped iteration only";
  } else {
    res.note = "dimension above enumeration cap; damped iteration only";
  }

  // Damped iteration from several random starts with cycle detection.
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int start = 0; start < 16; ++start) {
    Vec y(n);
    for (auto& v : y) v = u(rng);
    std::vector<Vec> recent;
    for (std::size_t it = 0; it < opts.iteration_budget; ++it) {
      const Vec gy = p.g(y);
      Vec ny(n);
      for (std::size_t i = 0; i < n; ++i)
        ny[i] = (1.0 - opts.damping) * y[i] + opts.damping * gy[i];
      bool cycled = false;
      for (const auto& prev : recent) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          d = std::max(d, std::abs(prev[i] - ny[i]));
        if (d < 1e-13) {
          cycled = true;
          break;
        }
      }
      y = std::move(ny);
      if (cycled) break;
      recent.push_back(y);
      if (recent.size() > 16) recent.erase(recent.begin());
      if (eval_residual(p, y) <= opts.tol) break;
    }
    const double r = eval_residual(p, y);
    if (r <= opts.tol && !already_found(res.points, y, 1e-7)) {
      FixedPoint fp;
      fp.y = y;
      fp.residual = r;
      fp.stability = Stability::marginal;
      res.points.push_back(std::move(fp));
    }
  }
  return res;
}

EmpiricalMeasure empirical_measure(const TrajectoryRecord& traj) {
  if (!traj.bounded)
    throw std::invalid_argument(
        "empirical measure needs a bounded normalized trajectory");
  EmpiricalMeasure m;
  m.samples = traj.normalized;
  return m;
}

double measure_average(const EmpiricalMeasure& m,
                       const std::function<double(const Vec&)>& h) {
  if (m.samples.empty()) return 0.0;
  double s = 0.0;
  for (const auto& y : m.samples) s += h(y);
  return s / double(m.samples.size());
}

AffineEigenResult eigen_affine_standard(const DenseMatrix& a, const Vec& b) {
  AffineEigenResult res;
  const std::size_t n = a.rows;
  if (a.cols != n || b.size() != n) {
    res.error = "dimension mismatch";
    return res;
  }
  // Left eigenvector at 1: null space of (A - I) transposed.
  DenseMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t.at(i, j) = a.at(j, i) - (i == j ? 1.0 : 0.0);
  const auto basis = null_space(t);
  if (basis.size() != 1) {
    res.error = "kernel of A - I has dimension " + std::to_string(basis.size()) +
                ", eigenvalue undetermined";
    return res;
  }
  Vec p = basis[0];
  double sum = 0.0;
  for (double v : p) sum += v;
  if (std::abs(sum) < 1e-12) {
    res.error = "left eigenvector not normalizable (p.1 = 0)";
    return res;
  }
  for (auto& v : p) v /= sum;
  double lambda = 0.0;
  for (std::size_t i = 0; i < n; ++i) lambda += p[i] * b[i];
  res.ok = true;
  res.lambda = lambda;
  res.left_eigenvector = std::move(p);
  return res;
}

}  // namespace minplus
