#include "minplus/pwa.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace minplus {

double PwaExpr::eval(const std::vector<double>& x,
                     std::unordered_map<const PwaExpr*, double>& memo) const {
  auto it = memo.find(this);
  if (it != memo.end()) return it->second;
  double v = 0.0;
  switch (op) {
    case Op::affine:
      v = aff.eval(x);
      break;
    case Op::combine:
      v = bias;
      for (const auto& [w, child] : terms) v += w * child->eval(x, memo);
      break;
    case Op::vmin: {
      v = std::numeric_limits<double>::infinity();
      for (const auto& a : alts) v = std::min(v, a->eval(x, memo));
      break;
    }
    case Op::vmax: {
      v = -std::numeric_limits<double>::infinity();
      for (const auto& a : alts) v = std::max(v, a->eval(x, memo));
      break;
    }
  }
  memo.emplace(this, v);
  return v;
}

PwaNode pwa_affine(AffineForm f) {
  auto e = std::make_shared<PwaExpr>();
  e->op = PwaExpr::Op::affine;
  e->aff = std::move(f);
  return e;
}

PwaNode pwa_affine(double c, std::vector<double> p) {
  return pwa_affine(AffineForm{c, std::move(p)});
}

PwaNode pwa_var(std::size_t dim, std::size_t i, double c) {
  std::vector<double> p(dim, 0.0);
  p.at(i) = 1.0;
  return pwa_affine(c, std::move(p));
}

PwaNode pwa_combine(double bias,
                    std::vector<std::pair<double, PwaNode>> terms) {
  auto e = std::make_shared<PwaExpr>();
  e->op = PwaExpr::Op::combine;
  e->bias = bias;
  e->terms = std::move(terms);
  return e;
}

namespace {
PwaNode make_choice(PwaExpr::Op op, std::vector<PwaNode> alts) {
  if (alts.empty()) throw std::invalid_argument("empty min/max");
  if (alts.size() == 1) return alts[0];
  auto e = std::make_shared<PwaExpr>();
  e->op = op;
  e->alts = std::move(alts);
  return e;
}
}  // namespace

PwaNode pwa_min(std::vector<PwaNode> alts) {
  return make_choice(PwaExpr::Op::vmin, std::move(alts));
}

PwaNode pwa_max(std::vector<PwaNode> alts) {
  return make_choice(PwaExpr::Op::vmax, std::move(alts));
}

std::vector<double> PwaMap::eval(const std::vector<double>& x) const {
  std::unordered_map<const PwaExpr*, double> memo;
  std::vector<double> y(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) y[i] = comps[i]->eval(x, memo);
  return y;
}

namespace {

PwaNode restrict_node(const PwaNode& n,
                      std::unordered_map<const PwaExpr*, PwaNode>& done) {
  auto it = done.find(n.get());
  if (it != done.end()) return it->second;
  PwaNode r;
  switch (n->op) {
    case PwaExpr::Op::affine: {
      AffineForm f;
      f.c = n->aff.c;  // x_1 = 0 drops its term
      f.p.assign(n->aff.p.begin() + 1, n->aff.p.end());
      r = pwa_affine(std::move(f));
      break;
    }
    case PwaExpr::Op::combine: {
      std::vector<std::pair<double, PwaNode>> ts;
      ts.reserve(n->terms.size());
      for (const auto& [w, child] : n->terms)
        ts.emplace_back(w, restrict_node(child, done));
      r = pwa_combine(n->bias, std::move(ts));
      break;
    }
    case PwaExpr::Op::vmin:
    case PwaExpr::Op::vmax: {
      std::vector<PwaNode> as;
      as.reserve(n->alts.size());
      for (const auto& a : n->alts) as.push_back(restrict_node(a, done));
      auto e = std::make_shared<PwaExpr>();
      e->op = n->op;
      e->alts = std::move(as);
      r = e;
      break;
    }
  }
  done.emplace(n.get(), r);
  return r;
}

void collect(const PwaNode& n, std::vector<const PwaExpr*>& nodes,
             std::unordered_map<const PwaExpr*, char>& seen) {
  if (seen.count(n.get())) return;
  seen.emplace(n.get(), 1);
  switch (n->op) {
    case PwaExpr::Op::affine:
      break;
    case PwaExpr::Op::combine:
      for (const auto& [w, child] : n->terms) collect(child, nodes, seen);
      break;
    case PwaExpr::Op::vmin:
    case PwaExpr::Op::vmax:
      for (const auto& a : n->alts) collect(a, nodes, seen);
      nodes.push_back(n.get());
      break;
  }
}

AffineForm resolve_node(const PwaExpr* n, std::size_t dim,
                        const std::unordered_map<const PwaExpr*, std::size_t>& index,
                        const RegionAssignment& choice,
                        std::unordered_map<const PwaExpr*, AffineForm>& memo) {
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  AffineForm f;
  f.p.assign(dim, 0.0);
  switch (n->op) {
    case PwaExpr::Op::affine:
      f = n->aff;
      f.p.resize(dim, 0.0);
      break;
    case PwaExpr::Op::combine: {
      f.c = n->bias;
      for (const auto& [w, child] : n->terms) {
        const AffineForm g = resolve_node(child.get(), dim, index, choice, memo);
        f.c += w * g.c;
        for (std::size_t i = 0; i < dim; ++i) f.p[i] += w * g.p[i];
      }
      break;
    }
    case PwaExpr::Op::vmin:
    case PwaExpr::Op::vmax: {
      const std::size_t pick = choice[index.at(n)];
      f = resolve_node(n->alts[pick].get(), dim, index, choice, memo);
      break;
    }
  }
  memo.emplace(n, f);
  return f;
}

}  // namespace

PwaMap restrict_first_zero(const PwaMap& m) {
  if (m.dim_in == 0) throw std::invalid_argument("restrict: zero dimension");
  PwaMap r;
  r.dim_in = m.dim_in - 1;
  std::unordered_map<const PwaExpr*, PwaNode> done;
  for (const auto& c : m.comps) r.comps.push_back(restrict_node(c, done));
  return r;
}

std::vector<const PwaExpr*> collect_choice_nodes(const PwaMap& m) {
  std::vector<const PwaExpr*> nodes;
  std::unordered_map<const PwaExpr*, char> seen;
  for (const auto& c : m.comps) collect(c, nodes, seen);
  return nodes;
}

std::vector<AffineForm> resolve_affine(const PwaMap& m,
                                       const std::vector<const PwaExpr*>& nodes,
                                       const RegionAssignment& choice) {
  std::unordered_map<const PwaExpr*, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);
  std::unordered_map<const PwaExpr*, AffineForm> memo;
  std::vector<AffineForm> out;
  out.reserve(m.comps.size());
  for (const auto& c : m.comps)
    out.push_back(resolve_node(c.get(), m.dim_in, index, choice, memo));
  return out;
}

bool assignment_active_at(const PwaMap& m,
                          const std::vector<const PwaExpr*>& nodes,
                          const RegionAssignment& choice,
                          const std::vector<double>& x, double tol) {
  std::unordered_map<const PwaExpr*, double> memo;
  for (const auto& c : m.comps) c->eval(x, memo);  // populate
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const PwaExpr* n = nodes[i];
    // A node not reached during eval cannot veto.
    std::vector<double> vals(n->alts.size());
    for (std::size_t a = 0; a < n->alts.size(); ++a)
      vals[a] = n->alts[a]->eval(x, memo);
    const double node_val = n->op == PwaExpr::Op::vmin
                                ? *std::min_element(vals.begin(), vals.end())
                                : *std::max_element(vals.begin(), vals.end());
    if (std::abs(vals[choice[i]] - node_val) > tol) return false;
  }
  return true;
}

}  // namespace minplus
