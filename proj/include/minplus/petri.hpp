#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "minplus/linalg.hpp"
#include "minplus/matrix.hpp"

namespace minplus {

/// Continuous timed Petri net: places hold real (fluid) token amounts,
/// production multiplicities may be negative (a firing then consumes
/// tokens downstream), every place has holding time 1.  Production edges
/// may carry delay 0 instead of the default 1; that expresses the
/// same-step dependencies of the priority rule, where the time shift sits
/// on an edge rather than in a place.
class PetriNet {
 public:
  struct Place {
    std::string id;
    double marking = 0.0;
  };
  struct Production {  // transition -> place
    std::size_t transition, place;
    double multiplicity = 1.0;
    int delay = 1;  // 1: uses q^k, 0: uses q^{k+1}
  };
  struct Sync {  // place -> transition
    std::size_t place, transition;
  };

  std::size_t add_place(std::string id, double marking);
  std::size_t add_transition(std::string id);
  void add_production(std::size_t transition, std::size_t place,
                      double multiplicity, int delay = 1);
  void add_sync(std::size_t place, std::size_t transition);

  std::size_t place_count() const { return places_.size(); }
  std::size_t transition_count() const { return transitions_.size(); }
  const Place& place(std::size_t p) const { return places_[p]; }
  const std::string& transition(std::size_t q) const { return transitions_[q]; }
  const std::vector<Production>& productions() const { return productions_; }
  const std::vector<Sync>& syncs() const { return syncs_; }

  std::optional<std::size_t> find_place(const std::string& id) const;
  std::optional<std::size_t> find_transition(const std::string& id) const;

  /// Downstream transitions of a place, in insertion order.
  std::vector<std::size_t> downstream(std::size_t place) const;
  /// In-places of a transition, in insertion order.
  std::vector<std::size_t> in_places(std::size_t transition) const;
  /// Production edges into a place.
  std::vector<std::size_t> in_productions(std::size_t place) const;

  bool has_zero_delay() const;

  /// H: |P| x |Q| standard matrix of the delay-1 multiplicities.
  DenseMatrix production_matrix() const;
  /// D: |Q| x |P| minplus matrix, D_qp = marking of p if p -> q.
  MinPlusMatrix synchronization_matrix() const;

 private:
  std::vector<Place> places_;
  std::vector<std::string> transitions_;
  std::vector<Production> productions_;
  std::vector<Sync> syncs_;
};

/// Cumulated quantities: tokens arrived per place, firings per transition.
struct NetState {
  std::vector<double> places;
  std::vector<double> transitions;
  std::size_t step_index = 0;
};

NetState initial_state(const PetriNet& net);

struct Diagnostics {
  bool ok = true;
  std::vector<std::string> messages;
};

/// Deterministic (conflict free) iff every place has exactly one
/// downstream transition; offending places are named.
Diagnostics validate_deterministic(const PetriNet& net);

/// One step of the counter dynamics: P^{k+1} = H Q^k (standard product),
/// Q^{k+1}_q = min over in-places of (a_p + P^{k+1}_p).  Zero-delay
/// production edges contribute Q^{k+1} terms and force a topological
/// evaluation order over the transitions.
NetState step(const PetriNet& net, const NetState& s);

/// Transition-only recursion Q -> D otimes (H Q); matches the Q-component
/// of step for any delays.
std::function<std::vector<double>(const std::vector<double>&)>
eliminate_places(const PetriNet& net);

/// Place-only recursion P -> H (D otimes P); needs a net without
/// zero-delay edges.
std::function<std::vector<double>(const std::vector<double>&)>
eliminate_transitions(const PetriNet& net);

/// Residuals of the firing constraints at every (transition, step):
/// min over p in q^in of [a_p + sum m_pq' q'^(k-delay) - sum_{q'' in p^out} q''^k].
/// Zero for any trajectory the net can realize.
std::vector<std::vector<double>> constraint_residual(
    const PetriNet& net, const std::vector<NetState>& trajectory);

/// Event graph: unit multiplicities, delay 1, one upstream transition and
/// one downstream transition per place.
bool is_event_graph(const PetriNet& net);

/// A with A_{q'q} = a_p for the place p between q and q'; the dynamics of
/// an event graph are Q^{k+1} = A otimes Q^k.
MinPlusMatrix event_graph_matrix(const PetriNet& net);

/// Replaces a conflict place (exactly two downstream transitions) by a
/// fixed-proportion split: the first downstream transition keeps the
/// marking and receives fraction[0] of every inflow, the second receives
/// fraction[1].  Fractions must sum to 1.
PetriNet build_routing_resolution(const PetriNet& net, std::size_t place,
                                  const std::vector<double>& fractions);

/// Replaces a conflict place by the priority rule: the first transition
/// in `priority_order` consumes first.  The loser's inflow subtracts the
/// winner's same-step firing through a negative zero-delay edge, so the
/// aggregate constraint of the original place is preserved exactly.
PetriNet build_priority_resolution(const PetriNet& net, std::size_t place,
                                   const std::vector<std::size_t>& priority_order);

}  // namespace minplus
