#include "minplus/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace minplus {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCriticalTol = 1e-9;
}  // namespace

PrecedenceGraph::PrecedenceGraph(const MinPlusMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("precedence graph needs a square matrix");
  node_count = a.rows();
  out.assign(node_count, {});
  in.assign(node_count, {});
  for (std::size_t j = 0; j < node_count; ++j) {
    for (std::size_t i = 0; i < node_count; ++i) {
      const ExtendedReal w = a.at(j, i);  // edge i -> j carries A_ji
      if (w.is_eps()) continue;
      if (w.is_neg_inf())
        throw std::invalid_argument(
            "precedence graph: -inf weight has no cycle-mean semantics");
      edges.push_back({i, j, w.value()});
      out[i].push_back(edges.size() - 1);
      in[j].push_back(edges.size() - 1);
    }
  }
}

NotStronglyConnected::NotStronglyConnected(std::size_t f, std::size_t t)
    : std::runtime_error("graph not strongly connected: no path from node " +
                         std::to_string(f) + " to node " + std::to_string(t)),
      from(f),
      to(t) {}

namespace {

// Returns an unreachable node from node 0 along `adj`, or npos.
std::size_t bfs_unreached(const PrecedenceGraph& g, bool forward) {
  std::vector<char> seen(g.node_count, 0);
  std::queue<std::size_t> q;
  if (g.node_count == 0) return std::size_t(-1);
  seen[0] = 1;
  q.push(0);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    const auto& ids = forward ? g.out[u] : g.in[u];
    for (std::size_t e : ids) {
      const std::size_t v = forward ? g.edges[e].to : g.edges[e].from;
      if (!seen[v]) {
        seen[v] = 1;
        q.push(v);
      }
    }
  }
  for (std::size_t v = 0; v < g.node_count; ++v)
    if (!seen[v]) return v;
  return std::size_t(-1);
}

}  // namespace

bool is_strongly_connected(const PrecedenceGraph& g) {
  return bfs_unreached(g, true) == std::size_t(-1) &&
         bfs_unreached(g, false) == std::size_t(-1);
}

void require_strongly_connected(const PrecedenceGraph& g) {
  if (std::size_t v = bfs_unreached(g, true); v != std::size_t(-1))
    throw NotStronglyConnected(0, v);
  if (std::size_t v = bfs_unreached(g, false); v != std::size_t(-1))
    throw NotStronglyConnected(v, 0);
}

namespace {

// Karp table: d[k][v] = min weight over walks of exactly k edges from
// node 0 to v.  Layers are sequential; each layer parallelizes over v
// with a fixed in-edge reduction order, so parallel == serial bitwise.
std::vector<std::vector<double>> karp_table(const PrecedenceGraph& g,
                                            bool parallel) {
  const std::size_t n = g.node_count;
  std::vector<std::vector<double>> d(n + 1, std::vector<double>(n, kInf));
  d[0][0] = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& prev = d[k - 1];
    auto& cur = d[k];
    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (parallel && nn >= 64)
    for (std::ptrdiff_t vv = 0; vv < nn; ++vv) {
      const std::size_t v = static_cast<std::size_t>(vv);
      double best = kInf;
      for (std::size_t e : g.in[v]) {
        const double cand = prev[g.edges[e].from] + g.edges[e].weight;
        if (cand < best) best = cand;
      }
      cur[v] = best;
    }
  }
  return d;
}

double karp_lambda(const PrecedenceGraph& g,
                   const std::vector<std::vector<double>>& d) {
  const std::size_t n = g.node_count;
  double lambda = kInf;
  for (std::size_t v = 0; v < n; ++v) {
    if (!std::isfinite(d[n][v])) continue;
    double worst = -kInf;
    for (std::size_t k = 0; k < n; ++k) {
      if (!std::isfinite(d[k][v])) continue;
      const double ratio = (d[n][v] - d[k][v]) / double(n - k);
      if (ratio > worst) worst = ratio;
    }
    if (worst < lambda) lambda = worst;
  }
  return lambda;
}

// Shortest-path potentials for weights (w - lambda); no negative cycle
// beyond float noise, so |V|-1 rounds suffice.
std::vector<double> potentials(const PrecedenceGraph& g, double lambda) {
  std::vector<double> p(g.node_count, kInf);
  p[0] = 0.0;
  for (std::size_t round = 0; round + 1 < g.node_count || round == 0; ++round) {
    bool changed = false;
    for (const auto& e : g.edges) {
      const double cand = p[e.from] + e.weight - lambda;
      if (cand < p[e.to] - 1e-15) {
        p[e.to] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return p;
}

// Deterministic cycle search in the critical subgraph: start nodes and
// successors visited in ascending order, so ties between optimal cycles
// resolve to the same witness on every run.
std::vector<std::size_t> critical_cycle(const PrecedenceGraph& g,
                                        double lambda,
                                        const std::vector<double>& pot) {
  const std::size_t n = g.node_count;
  std::vector<std::vector<std::size_t>> crit(n);
  for (const auto& e : g.edges) {
    const double rc = e.weight - lambda + pot[e.from] - pot[e.to];
    if (rc <= kCriticalTol) crit[e.from].push_back(e.to);
  }
  for (auto& succ : crit) std::sort(succ.begin(), succ.end());

  std::vector<int> state(n, 0);  // 0 fresh, 1 on stack, 2 done
  std::vector<std::size_t> stack;
  std::vector<std::size_t> iter(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (state[s]) continue;
    stack.clear();
    stack.push_back(s);
    state[s] = 1;
    iter[s] = 0;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      if (iter[u] < crit[u].size()) {
        const std::size_t v = crit[u][iter[u]++];
        if (state[v] == 1) {
          // Cycle: slice of the stack from v to u.
          auto it = std::find(stack.begin(), stack.end(), v);
          return {it, stack.end()};
        }
        if (state[v] == 0) {
          state[v] = 1;
          iter[v] = 0;
          stack.push_back(v);
        }
      } else {
        state[u] = 2;
        stack.pop_back();
      }
    }
  }
  throw std::logic_error("critical graph of an optimal lambda has no cycle");
}

double edge_weight(const PrecedenceGraph& g, std::size_t u, std::size_t v) {
  for (std::size_t e : g.out[u])
    if (g.edges[e].to == v) return g.edges[e].weight;
  throw std::logic_error("missing edge on witness cycle");
}

CycleStats finish_cycle(const PrecedenceGraph& g,
                        std::vector<std::size_t> cyc) {
  // Canonical rotation: smallest node first.
  const auto smallest = std::min_element(cyc.begin(), cyc.end());
  std::rotate(cyc.begin(), smallest, cyc.end());
  CycleStats cs;
  cs.nodes = cyc;
  cs.length = cyc.size();
  double total = 0.0;
  for (std::size_t i = 0; i < cyc.size(); ++i)
    total += edge_weight(g, cyc[i], cyc[(i + 1) % cyc.size()]);
  cs.total_weight = total;
  cs.mean_weight = total / double(cs.length);
  return cs;
}

CycleStats min_mean_cycle_impl(const MinPlusMatrix& a, bool parallel) {
  PrecedenceGraph g(a);
  if (g.node_count == 0) throw std::invalid_argument("empty matrix");
  require_strongly_connected(g);
  const auto d = karp_table(g, parallel);
  const double lambda = karp_lambda(g, d);
  if (!std::isfinite(lambda))
    throw std::invalid_argument("matrix has no cycle");
  const auto pot = potentials(g, lambda);
  return finish_cycle(g, critical_cycle(g, lambda, pot));
}

}  // namespace

CycleStats min_mean_cycle(const MinPlusMatrix& a) {
  return min_mean_cycle_impl(a, true);
}

CycleStats min_mean_cycle_serial(const MinPlusMatrix& a) {
  return min_mean_cycle_impl(a, false);
}

MinPlusVector eigenvector_linear(const MinPlusMatrix& a, double lambda) {
  PrecedenceGraph g(a);
  require_strongly_connected(g);
  const MinPlusMatrix b = a.shifted(-lambda);
  const std::size_t n = a.rows();

  const std::size_t crit = min_mean_cycle(a).nodes.front();
  // Column `crit` of the closure Id + B + B^2 + ... as a fixed point of
  // x -> min(x, B otimes x); n-1 applications reach it.
  MinPlusVector x(n, ExtendedReal::eps());
  x[crit] = ExtendedReal::unit();
  for (std::size_t step = 0; step + 1 < n; ++step) {
    MinPlusVector bx = mat_vec(b, x);
    for (std::size_t i = 0; i < n; ++i) x[i] = oplus(x[i], bx[i]);
  }
  // One more application must leave x unchanged (up to noise); a further
  // strict decrease means a negative cycle slipped past the shift.
  MinPlusVector bx = mat_vec(b, x);
  for (std::size_t i = 0; i < n; ++i) {
    if (!x[i].is_finite())
      throw std::runtime_error("eigenvector entry unreachable from the critical node");
    if (bx[i].is_finite() && bx[i].value() < x[i].value() - 1e-9)
      throw std::runtime_error(
          "eigenvector closure diverges: negative cycle after normalization");
  }
  const double base = x[0].value();
  for (auto& xi : x)
    if (xi.is_finite()) xi = ExtendedReal(xi.value() - base);
  return x;
}

}  // namespace minplus
