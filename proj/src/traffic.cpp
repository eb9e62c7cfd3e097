#include "minplus/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace minplus {

// ---------------------------------------------------------------------------
// Circular road
// ---------------------------------------------------------------------------

double RoadConfig::vehicle_count() const {
  double s = 0.0;
  for (double v : occupancy) s += v;
  return s;
}

std::vector<int> exclusion_step(const std::vector<int>& w) {
  const std::size_t m = w.size();
  std::vector<int> next(w);
  for (std::size_t s = 0; s < m; ++s) {
    const std::size_t t = (s + 1) % m;
    if (w[s] == 1 && w[t] == 0) {
      next[s] = 0;
      next[t] = 1;
    }
  }
  return next;
}

ExclusionFlow exclusion_flow(const std::vector<int>& w0, std::size_t horizon) {
  const std::size_t m = w0.size();
  ExclusionFlow res;
  if (m == 0 || m > 63)
    throw std::invalid_argument("exclusion flow supports 1..63 sections");
  auto encode = [m](const std::vector<int>& w) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < m; ++i) v |= std::uint64_t(w[i]) << i;
    return v;
  };
  std::unordered_map<std::uint64_t, std::size_t> seen;
  std::vector<std::size_t> moves;  // moves made entering step k+1
  std::vector<int> w = w0;
  seen.emplace(encode(w), 0);
  for (std::size_t k = 0; k < horizon; ++k) {
    std::vector<int> next = exclusion_step(w);
    std::size_t moved = 0;
    for (std::size_t s = 0; s < m; ++s)
      if (w[s] == 1 && w[(s + 1) % m] == 0) ++moved;
    moves.push_back(moved);
    w = std::move(next);
    auto [it, fresh] = seen.emplace(encode(w), k + 1);
    if (!fresh) {
      const std::size_t start = it->second;
      const std::size_t period = k + 1 - start;
      std::size_t total = 0;
      for (std::size_t t = start; t < start + period; ++t) total += moves[t];
      res.periodic = true;
      res.transient = start;
      res.period = period;
      res.moves_per_period = total;
      res.flow = double(total) / (double(period) * double(m));
      return res;
    }
  }
  res.diagnostic = "no periodic regime within the horizon";
  return res;
}

MinPlusMatrix road_event_graph(const RoadConfig& cfg) {
  const std::size_t m = cfg.sections();
  MinPlusMatrix a(m, m);
  for (std::size_t s = 0; s < m; ++s) {
    const std::size_t prev = (s + m - 1) % m;
    const std::size_t next = (s + 1) % m;
    a.at(s, prev) = oplus(a.at(s, prev), ExtendedReal(cfg.occupancy[prev]));
    a.at(s, next) = oplus(a.at(s, next), ExtendedReal(1.0 - cfg.occupancy[s]));
  }
  return a;
}

PetriNet road_event_graph_net(const RoadConfig& cfg) {
  const std::size_t m = cfg.sections();
  PetriNet net;
  for (std::size_t s = 0; s < m; ++s)
    net.add_transition("q" + std::to_string(s + 1));
  for (std::size_t s = 0; s < m; ++s) {
    const std::size_t next = (s + 1) % m;
    const std::size_t fwd =
        net.add_place("car" + std::to_string(s + 1), cfg.occupancy[s]);
    net.add_production(s, fwd, 1.0);
    net.add_sync(fwd, next);
    const std::size_t bwd =
        net.add_place("gap" + std::to_string(s + 1), 1.0 - cfg.occupancy[s]);
    net.add_production(next, bwd, 1.0);
    net.add_sync(bwd, s);
  }
  return net;
}

// ---------------------------------------------------------------------------
// Junction marking
// ---------------------------------------------------------------------------

double JunctionConfig::density() const {
  double s = 0.0;
  for (double v : a) s += v;
  return s / double(N() - 1);
}

double JunctionConfig::abar(std::size_t i) const {
  if (i == n || i == n + m) return 1.0 - at(n) - at(n + m);
  return 1.0 - at(i);
}

double JunctionConfig::road1_mass() const {
  double s = 0.0;
  for (std::size_t i = 1; i < n; ++i) s += at(i);
  return s;
}

double JunctionConfig::road2_mass() const {
  double s = 0.0;
  for (std::size_t i = n + 1; i < n + m; ++i) s += at(i);
  return s;
}

void JunctionConfig::validate() const {
  if (n < 2 || m < 2)
    throw std::invalid_argument("junction needs n >= 2 and m >= 2");
  if (a.size() != N())
    throw std::invalid_argument("marking vector must have n + m entries");
  constexpr double tol = 1e-12;
  for (double v : a)
    if (v < -tol || v > 1.0 + tol)
      throw std::invalid_argument("marking entries must lie in [0,1]");
  if (at(n) + at(n + m) > 1.0 + tol)
    throw std::invalid_argument("junction cell overfull: a_n + a_{n+m} > 1");
}

// ---------------------------------------------------------------------------
// Phases
// ---------------------------------------------------------------------------

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::free_flow: return "free";
    case Phase::saturation: return "saturation";
    case Phase::recession: return "recession";
    case Phase::freeze: return "freeze";
  }
  return "?";
}

PhaseBoundaries phase_boundaries(std::size_t n, std::size_t m) {
  const double N = double(n + m);
  const double rho = 1.0 / N;
  const double r = double(m) / N;
  PhaseBoundaries b;
  b.alpha = 1.0 / (4.0 * (1.0 - rho));
  b.beta = (r + 0.5 - rho) / (2.0 * (1.0 - rho));
  b.gamma = r / (1.0 - rho);
  return b;
}

std::vector<Phase> phases_of(std::size_t n, std::size_t m, double d) {
  const auto b = phase_boundaries(n, m);
  constexpr double tol = 1e-12;
  std::vector<Phase> out;
  if (d <= b.alpha + tol) out.push_back(Phase::free_flow);
  if (d >= b.alpha - tol && d <= b.beta + tol) out.push_back(Phase::saturation);
  const double lo = std::min(b.beta, b.gamma), hi = std::max(b.beta, b.gamma);
  if (d > lo - tol && d < hi + tol) out.push_back(Phase::recession);
  if (d >= b.gamma - tol) out.push_back(Phase::freeze);
  return out;
}

Phase phase_of(std::size_t n, std::size_t m, double d) {
  const auto b = phase_boundaries(n, m);
  if (d >= b.gamma) return Phase::freeze;
  if (d <= b.alpha) return Phase::free_flow;
  if (d <= b.beta) return Phase::saturation;
  return Phase::recession;
}

// ---------------------------------------------------------------------------
// Dynamics
// ---------------------------------------------------------------------------

HomogeneousMap junction_dynamics(const JunctionConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n, m = cfg.m, N = cfg.N();
  auto var = [N](std::size_t i1) { return pwa_var(N, i1 - 1); };  // 1-based
  auto aff = [N](double c, std::initializer_list<std::pair<std::size_t, double>>
                             terms) {
    std::vector<double> p(N, 0.0);
    for (auto [i1, w] : terms) p[i1 - 1] += w;
    return pwa_affine(c, std::move(p));
  };

  std::vector<PwaNode> comp(N);
  // q_n first: q_{n+m} consumes it within the same step.
  const PwaNode qn = pwa_min(
      {aff(cfg.abar(n), {{1, 1.0}, {n + 1, 1.0}, {n + m, -1.0}}),
       aff(cfg.at(n - 1), {{n - 1, 1.0}})});
  comp[n - 1] = qn;
  comp[n + m - 1] = pwa_min(
      {pwa_combine(cfg.abar(n + m),
                   {{1.0, var(1)}, {1.0, var(n + 1)}, {-1.0, qn}}),
       aff(cfg.at(n + m - 1), {{n + m - 1, 1.0}})});
  comp[0] = pwa_min({aff(cfg.at(n), {{n, 0.5}, {n + m, 0.5}}),
                     aff(cfg.abar(1), {{2, 1.0}})});
  comp[n] = pwa_min({aff(cfg.at(n + m), {{n, 0.5}, {n + m, 0.5}}),
                     aff(cfg.abar(n + 1), {{n + 2, 1.0}})});
  for (std::size_t i = 2; i + 1 <= n + m; ++i) {
    if (i == n || i == n + 1 || i == n + m) continue;
    comp[i - 1] = pwa_min({aff(cfg.at(i - 1), {{i - 1, 1.0}}),
                           aff(cfg.abar(i), {{i + 1, 1.0}})});
  }
  PwaMap map;
  map.dim_in = N;
  map.comps = std::move(comp);
  return HomogeneousMap::from_pwa(std::move(map));
}

PetriNet junction_net(const JunctionConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n, m = cfg.m, N = cfg.N();
  PetriNet net;
  for (std::size_t i = 1; i <= N; ++i)
    net.add_transition("q" + std::to_string(i));
  auto q = [](std::size_t i1) { return i1 - 1; };
  auto place = [&](const std::string& id, double marking, std::size_t down) {
    const std::size_t p = net.add_place(id, marking);
    net.add_sync(p, q(down));
    return p;
  };
  for (std::size_t i = 2; i + 1 <= N; ++i) {
    if (i == n || i == n + 1 || i == n + m) continue;
    const std::size_t pa = place("a" + std::to_string(i - 1), cfg.at(i - 1), i);
    net.add_production(q(i - 1), pa, 1.0);
    const std::size_t pb = place("abar" + std::to_string(i), cfg.abar(i), i);
    net.add_production(q(i + 1), pb, 1.0);
  }
  {  // q_n: entry authorization from the junction plus the road behind
    const std::size_t auth = place("auth_n", cfg.abar(n), n);
    net.add_production(q(1), auth, 1.0);
    net.add_production(q(n + 1), auth, 1.0);
    net.add_production(q(n + m), auth, -1.0);
    const std::size_t pa = place("a" + std::to_string(n - 1), cfg.at(n - 1), n);
    net.add_production(q(n - 1), pa, 1.0);
  }
  {  // q_{n+m}: the losing road subtracts the winner's same-step firing
    const std::size_t auth = place("auth_nm", cfg.abar(n + m), n + m);
    net.add_production(q(1), auth, 1.0);
    net.add_production(q(n + 1), auth, 1.0);
    net.add_production(q(n), auth, -1.0, 0);
    const std::size_t pa =
        place("a" + std::to_string(n + m - 1), cfg.at(n + m - 1), n + m);
    net.add_production(q(n + m - 1), pa, 1.0);
  }
  {  // q_1 and q_{n+1}: served by the junction cell, half-sum of exits
    const std::size_t pj1 = place("a_n", cfg.at(n), 1);
    net.add_production(q(n), pj1, 0.5);
    net.add_production(q(n + m), pj1, 0.5);
    const std::size_t pb1 = place("abar1", cfg.abar(1), 1);
    net.add_production(q(2), pb1, 1.0);
    const std::size_t pj2 = place("a_nm", cfg.at(n + m), n + 1);
    net.add_production(q(n), pj2, 0.5);
    net.add_production(q(n + m), pj2, 0.5);
    const std::size_t pb2 = place("abar" + std::to_string(n + 1),
                                  cfg.abar(n + 1), n + 1);
    net.add_production(q(n + 2), pb2, 1.0);
  }
  return net;
}

// ---------------------------------------------------------------------------
// Eigenpairs
// ---------------------------------------------------------------------------

ReducedEigenvector junction_eigvec_table(const JunctionConfig& cfg, Phase phase,
                                         double lambda) {
  const double an = cfg.at(cfg.n);
  const double anm = cfg.at(cfg.n + cfg.m);
  const double abar_j = cfg.abar(cfg.n);
  const double bn = cfg.road1_mass();
  const double bm_bar = double(cfg.m - 1) - cfg.road2_mass();
  ReducedEigenvector r;
  r.x = 0.0;
  if (phase == Phase::freeze) {
    r.u = abar_j + bm_bar;
    r.v = -2.0 * an - abar_j - bm_bar;
    r.y = -2.0 * an - abar_j;
    return r;
  }
  r.u = bn - double(cfg.n - 1) * lambda;
  r.v = double(cfg.n + 1) * lambda - 2.0 * an - bn;
  r.y = phase == Phase::recession ? 4.0 * lambda - 1.0 + anm - an : anm - an;
  return r;
}

std::vector<double> expand_eigenvector(const JunctionConfig& cfg,
                                       const ReducedEigenvector& red,
                                       double lambda) {
  if (lambda >= 0.5)
    throw std::invalid_argument(
        "expansion unique only for lambda < 1/2");
  const std::size_t n = cfg.n, m = cfg.m, N = cfg.N();
  std::vector<double> q(N, 0.0);
  q[0] = red.x;
  q[n - 1] = red.u;
  q[n] = red.y;
  q[N - 1] = red.v;
  // Interior of the priority road: cheapest of the two path sums.
  for (std::size_t i = 2; i < n; ++i) {
    double from_x = red.x;
    for (std::size_t j = 1; j < i; ++j) from_x += cfg.at(j) - lambda;
    double from_u = red.u;
    for (std::size_t j = i; j < n; ++j) from_u += cfg.abar(j) - lambda;
    q[i - 1] = std::min(from_x, from_u);
  }
  for (std::size_t i = n + 2; i < n + m; ++i) {
    double from_y = red.y;
    for (std::size_t j = n + 1; j < i; ++j) from_y += cfg.at(j) - lambda;
    double from_v = red.v;
    for (std::size_t j = i; j < n + m; ++j) from_v += cfg.abar(j) - lambda;
    q[i - 1] = std::min(from_y, from_v);
  }
  return q;
}

ResidualReport verify_eigenpair(const JunctionConfig& cfg, double lambda,
                                const std::vector<double>& q) {
  cfg.validate();
  const std::size_t n = cfg.n, m = cfg.m, N = cfg.N();
  if (q.size() != N) throw std::invalid_argument("eigenvector length != n+m");
  auto Q = [&](std::size_t i1) { return q[i1 - 1]; };
  ResidualReport rep;
  rep.residuals.assign(N, 0.0);
  rep.lambda_in_range = lambda >= -1e-12 && lambda <= 0.25 + 1e-12;
  auto set_res = [&](std::size_t i1, double lhs, double rhs) {
    const double res = lhs - rhs;
    rep.residuals[i1 - 1] = res;
    if (std::abs(res) > rep.max_residual) {
      rep.max_residual = std::abs(res);
      rep.worst_equation = i1;
    }
  };
  for (std::size_t i = 2; i + 1 <= N; ++i) {
    if (i == n || i == n + 1 || i == n + m) continue;
    set_res(i, lambda + Q(i),
            std::min(cfg.at(i - 1) + Q(i - 1), cfg.abar(i) + Q(i + 1)));
  }
  set_res(n, lambda + Q(n),
          std::min(cfg.abar(n) + Q(1) + Q(n + 1) - Q(n + m),
                   cfg.at(n - 1) + Q(n - 1)));
  set_res(n + m, lambda + Q(n + m),
          std::min(cfg.abar(n + m) + Q(1) + Q(n + 1) - (lambda + Q(n)),
                   cfg.at(n + m - 1) + Q(n + m - 1)));
  set_res(1, lambda + Q(1),
          std::min(cfg.at(n) + 0.5 * (Q(n) + Q(n + m)),
                   cfg.abar(1) + Q(2)));
  set_res(n + 1, lambda + Q(n + 1),
          std::min(cfg.at(n + m) + 0.5 * (Q(n) + Q(n + m)),
                   cfg.abar(n + 1) + Q(n + 2)));
  return rep;
}

double lambda_free(const JunctionConfig& cfg) {
  return (1.0 - cfg.rho()) * cfg.density();
}

double lambda_recession_table(const JunctionConfig& cfg) {
  const double r = cfg.r(), rho = cfg.rho(), d = cfg.density();
  return (r - (1.0 - rho) * d) / (2.0 * r - 1.0 + 2.0 * rho);
}

double lambda_recession_appendix(const JunctionConfig& cfg) {
  const double d = cfg.density();
  const double num = double(cfg.N() - 1) * d - double(cfg.m - 1);
  const double den = double(cfg.n) - double(cfg.m) + 2.0;
  return num / den;
}

double junction_lambda_approx(double d, double r) {
  const double rec = (r - d) / (2.0 * r - 1.0);
  return std::max(std::min(std::min(d, 0.25), rec), 0.0);
}

LambdaExact junction_lambda_exact(const JunctionConfig& cfg) {
  cfg.validate();
  LambdaExact out;
  const double d = cfg.density();
  const auto bands = phases_of(cfg.n, cfg.m, d);
  auto try_candidate = [&](Phase phase, double lambda, const char* formula) {
    LambdaExact::Candidate c;
    c.phase = phase;
    c.lambda = lambda;
    c.formula = formula;
    if (lambda < -1e-12 || lambda > 0.25 + 1e-12 || lambda >= 0.5) {
      c.pass = false;
      out.candidates.push_back(std::move(c));
      return;
    }
    c.reduced = junction_eigvec_table(cfg, phase, lambda);
    c.full = expand_eigenvector(cfg, c.reduced, lambda);
    const auto rep = verify_eigenpair(cfg, lambda, c.full);
    c.pass = rep.pass();
    c.residual = rep.max_residual;
    out.candidates.push_back(std::move(c));
  };
  for (Phase phase : bands) {
    switch (phase) {
      case Phase::free_flow:
        try_candidate(phase, lambda_free(cfg), "(1-rho)d");
        break;
      case Phase::saturation:
        try_candidate(phase, 0.25, "1/4");
        break;
      case Phase::recession:
        try_candidate(phase, lambda_recession_table(cfg),
                      "(r-(1-rho)d)/(2r-1+2rho)");
        try_candidate(phase, lambda_recession_appendix(cfg),
                      "((N-1)d-(m-1))/(n-m+2)");
        break;
      case Phase::freeze:
        try_candidate(phase, 0.0, "0");
        break;
    }
  }
  // Headline: freeze wins once valid (the blocked regime), then the
  // table's band order.
  auto pick = [&](Phase want) {
    for (const auto& c : out.candidates)
      if (c.phase == want && c.pass) {
        out.ok = true;
        out.lambda = c.lambda;
        out.phase = c.phase;
        return true;
      }
    return false;
  };
  const auto b = phase_boundaries(cfg.n, cfg.m);
  if (d >= b.gamma - 1e-12 && pick(Phase::freeze)) return out;
  if (pick(Phase::free_flow)) return out;
  if (pick(Phase::saturation)) return out;
  if (pick(Phase::recession)) return out;
  pick(Phase::freeze);
  return out;
}

// ---------------------------------------------------------------------------
// Marking construction and sweeps
// ---------------------------------------------------------------------------

JunctionConfig marking_from_density(std::size_t n, std::size_t m, double d,
                                    Placement policy, std::uint64_t seed) {
  if (d < 0.0 || d > 1.0)
    throw std::invalid_argument("density must lie in [0,1]");
  if (n < 2 || m < 2)
    throw std::invalid_argument("junction needs n >= 2 and m >= 2");
  JunctionConfig cfg;
  cfg.n = n;
  cfg.m = m;
  const std::size_t N = n + m;
  cfg.a.assign(N, 0.0);
  if (policy == Placement::even) {
    for (std::size_t i = 1; i <= N; ++i) {
      if (i == n || i == N) continue;
      cfg.a[i - 1] = d;
    }
    cfg.a[n - 1] = d / 2.0;
    cfg.a[N - 1] = d / 2.0;
    return cfg;
  }
  // Random placement: one bucket per effective cell (junction pair is a
  // single unit-capacity bucket), proportional targets clipped to the
  // caps and the excess redistributed until it vanishes.
  const std::size_t cells = N - 1;
  const double total = d * double(N - 1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> weight(cells), val(cells, 0.0);
  for (auto& w : weight) w = u(rng);
  double wsum = 0.0;
  for (double w : weight) wsum += w;
  double remaining = total;
  std::vector<char> frozen(cells, 0);
  for (int round = 0; round < 64 && remaining > 1e-15; ++round) {
    double active_w = 0.0;
    for (std::size_t i = 0; i < cells; ++i)
      if (!frozen[i]) active_w += weight[i];
    if (active_w <= 0.0) break;
    bool clipped = false;
    double given = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
      if (frozen[i]) continue;
      double share = remaining * weight[i] / active_w;
      if (val[i] + share >= 1.0) {
        given += 1.0 - val[i];
        val[i] = 1.0;
        frozen[i] = 1;
        clipped = true;
      } else {
        val[i] += share;
        given += share;
      }
    }
    remaining -= given;
    if (!clipped) break;
  }
  // Final exactness correction on an unsaturated bucket.
  double placed = 0.0;
  for (double v : val) placed += v;
  double deficit = total - placed;
  for (std::size_t i = 0; i < cells && std::abs(deficit) > 0.0; ++i) {
    const double room = deficit > 0 ? 1.0 - val[i] : val[i];
    const double take = std::clamp(deficit, -room, room);
    val[i] += take;
    deficit -= take;
  }
  std::uniform_real_distribution<double> split(0.2, 0.8);
  const double frac = split(rng);
  std::size_t bucket = 0;
  for (std::size_t i = 1; i <= N; ++i) {
    if (i == n || i == N) continue;
    cfg.a[i - 1] = val[bucket++];
  }
  const double junction_mass = val[cells - 1];
  cfg.a[n - 1] = junction_mass * frac;
  cfg.a[N - 1] = junction_mass * (1.0 - frac);
  return cfg;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  std::vector<double> g;
  if (points == 0) return g;
  if (points == 1) {
    g.push_back(lo);
    return g;
  }
  for (std::size_t i = 0; i < points; ++i)
    g.push_back(lo + (hi - lo) * double(i) / double(points - 1));
  return g;
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t idx) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (idx + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<DiagramPoint> sweep_point(std::size_t n, std::size_t m, double d,
                                      std::size_t idx,
                                      const SweepParams& params) {
  const std::size_t N = n + m;
  const std::size_t K0 = params.burn_in ? params.burn_in : 200 * N;
  const std::size_t K = params.horizon ? params.horizon : 2000 * N;
  const std::uint64_t seed = mix_seed(params.seed, idx);
  DiagramPoint base;
  base.d = d;
  base.n = n;
  base.m = m;
  base.seed = seed;
  base.burn_in = K0;
  base.horizon = K;
  base.lambda_approx = junction_lambda_approx(d, double(m) / double(N));

  std::vector<DiagramPoint> rows;
  try {
    const JunctionConfig cfg =
        marking_from_density(n, m, d, params.placement, seed);
    const LambdaExact ex = junction_lambda_exact(cfg);
    const HomogeneousMap f = junction_dynamics(cfg);
    const GrowthRateEstimate chi =
        growth_rate(f, Vec(N, 0.0), K0, K);

    base.lambda_exact = ex.lambda;
    base.phase = ex.phase;
    base.chi_sim = chi.chi;
    base.sim_ok = ex.ok;
    if (!ex.ok) base.error = "no closed-form candidate verified";
    rows.push_back(base);
    // At an exact boundary the table is multi-valued: one row per
    // distinct passing value.
    for (const auto& c : ex.candidates) {
      if (!c.pass || (c.lambda == ex.lambda && c.phase == ex.phase)) continue;
      if (std::abs(c.lambda - ex.lambda) < 1e-12) continue;
      DiagramPoint extra = base;
      extra.lambda_exact = c.lambda;
      extra.phase = c.phase;
      rows.push_back(extra);
    }
  } catch (const std::exception& err) {
    base.sim_ok = false;
    base.error = err.what();
    rows.push_back(base);
  }
  return rows;
}

}  // namespace

std::vector<DiagramPoint> diagram_sweep(std::size_t n, std::size_t m,
                                        const std::vector<double>& grid,
                                        const SweepParams& params) {
  std::vector<std::vector<DiagramPoint>> per_point(grid.size());
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic) if (params.parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    per_point[i] = sweep_point(n, m, grid[i], std::size_t(i), params);
  std::vector<DiagramPoint> out;
  for (auto& rows : per_point)
    for (auto& r : rows) out.push_back(std::move(r));
  std::stable_sort(out.begin(), out.end(),
                   [](const DiagramPoint& a, const DiagramPoint& b) {
                     return a.d < b.d;
                   });
  return out;
}

}  // namespace minplus
