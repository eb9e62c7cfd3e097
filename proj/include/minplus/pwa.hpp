#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace minplus {

/// c + p.x
struct AffineForm {
  double c = 0.0;
  std::vector<double> p;

  double eval(const std::vector<double>& x) const {
    double v = c;
    for (std::size_t i = 0; i < p.size(); ++i) v += p[i] * x[i];
    return v;
  }
};

/// Expression DAG for piecewise-affine functions: affine atoms, weighted
/// sums of subexpressions, and pointwise min/max.  Nodes are shared, so a
/// selection made inside one component stays consistent when the same
/// subexpression feeds another component (the junction dynamics needs
/// exactly this).
class PwaExpr;
using PwaNode = std::shared_ptr<const PwaExpr>;

class PwaExpr {
 public:
  enum class Op { affine, combine, vmin, vmax };

  Op op;
  AffineForm aff;                                      // affine
  double bias = 0.0;                                   // combine
  std::vector<std::pair<double, PwaNode>> terms;       // combine
  std::vector<PwaNode> alts;                           // vmin / vmax

  double eval(const std::vector<double>& x,
              std::unordered_map<const PwaExpr*, double>& memo) const;
};

PwaNode pwa_affine(AffineForm f);
PwaNode pwa_affine(double c, std::vector<double> p);
/// Affine atom c + x_i in dimension dim.
PwaNode pwa_var(std::size_t dim, std::size_t i, double c = 0.0);
PwaNode pwa_combine(double bias, std::vector<std::pair<double, PwaNode>> terms);
PwaNode pwa_min(std::vector<PwaNode> alts);
PwaNode pwa_max(std::vector<PwaNode> alts);

/// A map R^dim_in -> R^(#components) given by PWA expression roots.
struct PwaMap {
  std::size_t dim_in = 0;
  std::vector<PwaNode> comps;

  std::vector<double> eval(const std::vector<double>& x) const;
};

/// Substitutes x_1 = 0 and renumbers the remaining variables, giving a
/// map on dimension dim_in - 1.  Shared nodes stay shared.
PwaMap restrict_first_zero(const PwaMap& m);

/// One choice per min/max node of the DAG.
using RegionAssignment = std::vector<std::size_t>;

/// All min/max nodes reachable from the roots, in a deterministic order.
std::vector<const PwaExpr*> collect_choice_nodes(const PwaMap& m);

/// Affine form of every component under a fixed selection.
std::vector<AffineForm> resolve_affine(const PwaMap& m,
                                       const std::vector<const PwaExpr*>& nodes,
                                       const RegionAssignment& choice);

/// Checks that `choice` is actually selected at point x: each chosen
/// alternative attains its node's min/max within tol.
bool assignment_active_at(const PwaMap& m,
                          const std::vector<const PwaExpr*>& nodes,
                          const RegionAssignment& choice,
                          const std::vector<double>& x, double tol);

}  // namespace minplus
