#include "minplus/petri.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace minplus {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::size_t PetriNet::add_place(std::string id, double marking) {
  places_.push_back({std::move(id), marking});
  return places_.size() - 1;
}

std::size_t PetriNet::add_transition(std::string id) {
  transitions_.push_back(std::move(id));
  return transitions_.size() - 1;
}

void PetriNet::add_production(std::size_t transition, std::size_t place,
                              double multiplicity, int delay) {
  if (transition >= transitions_.size() || place >= places_.size())
    throw std::out_of_range("production edge references unknown node");
  if (delay != 0 && delay != 1)
    throw std::invalid_argument("production delay must be 0 or 1");
  productions_.push_back({transition, place, multiplicity, delay});
}

void PetriNet::add_sync(std::size_t place, std::size_t transition) {
  if (transition >= transitions_.size() || place >= places_.size())
    throw std::out_of_range("sync edge references unknown node");
  syncs_.push_back({place, transition});
}

std::optional<std::size_t> PetriNet::find_place(const std::string& id) const {
  for (std::size_t p = 0; p < places_.size(); ++p)
    if (places_[p].id == id) return p;
  return std::nullopt;
}

std::optional<std::size_t> PetriNet::find_transition(
    const std::string& id) const {
  for (std::size_t q = 0; q < transitions_.size(); ++q)
    if (transitions_[q] == id) return q;
  return std::nullopt;
}

std::vector<std::size_t> PetriNet::downstream(std::size_t place) const {
  std::vector<std::size_t> out;
  for (const auto& s : syncs_)
    if (s.place == place) out.push_back(s.transition);
  return out;
}

std::vector<std::size_t> PetriNet::in_places(std::size_t transition) const {
  std::vector<std::size_t> out;
  for (const auto& s : syncs_)
    if (s.transition == transition) out.push_back(s.place);
  return out;
}

std::vector<std::size_t> PetriNet::in_productions(std::size_t place) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < productions_.size(); ++e)
    if (productions_[e].place == place) out.push_back(e);
  return out;
}

bool PetriNet::has_zero_delay() const {
  return std::any_of(productions_.begin(), productions_.end(),
                     [](const Production& e) { return e.delay == 0; });
}

DenseMatrix PetriNet::production_matrix() const {
  DenseMatrix h(place_count(), transition_count());
  for (const auto& e : productions_)
    if (e.delay == 1) h.at(e.place, e.transition) += e.multiplicity;
  return h;
}

MinPlusMatrix PetriNet::synchronization_matrix() const {
  MinPlusMatrix d(transition_count(), place_count());
  for (const auto& s : syncs_)
    d.at(s.transition, s.place) = ExtendedReal(places_[s.place].marking);
  return d;
}

NetState initial_state(const PetriNet& net) {
  NetState s;
  s.places.assign(net.place_count(), 0.0);
  s.transitions.assign(net.transition_count(), 0.0);
  return s;
}

Diagnostics validate_deterministic(const PetriNet& net) {
  Diagnostics d;
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    const auto down = net.downstream(p);
    if (down.size() != 1) {
      d.ok = false;
      d.messages.push_back("place '" + net.place(p).id + "' has " +
                           std::to_string(down.size()) +
                           " downstream transitions, expected 1");
    }
  }
  return d;
}

namespace {

// Transitions ordered so every zero-delay producer fires first.
std::vector<std::size_t> zero_delay_order(const PetriNet& net) {
  const std::size_t nq = net.transition_count();
  std::vector<std::vector<std::size_t>> deps(nq);  // q depends on deps[q]
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t p : net.in_places(q))
      for (std::size_t e : net.in_productions(p))
        if (net.productions()[e].delay == 0)
          deps[q].push_back(net.productions()[e].transition);
  std::vector<int> state(nq, 0);
  std::vector<std::size_t> order;
  std::function<void(std::size_t)> visit = [&](std::size_t q) {
    if (state[q] == 2) return;
    if (state[q] == 1)
      throw std::invalid_argument(
          "circular zero-delay dependency between transitions");
    state[q] = 1;
    for (std::size_t dep : deps[q]) visit(dep);
    state[q] = 2;
    order.push_back(q);
  };
  for (std::size_t q = 0; q < nq; ++q) visit(q);
  return order;
}

}  // namespace

NetState step(const PetriNet& net, const NetState& s) {
  const auto diag = validate_deterministic(net);
  if (!diag.ok)
    throw std::invalid_argument("step on a non-deterministic net: " +
                                diag.messages.front());
  NetState next;
  next.step_index = s.step_index + 1;
  next.transitions.assign(net.transition_count(), 0.0);
  next.places.assign(net.place_count(), 0.0);

  const auto order = zero_delay_order(net);
  std::vector<double> avail(net.place_count());
  for (std::size_t q_idx : order) {
    double fired = kInf;
    for (std::size_t p : net.in_places(q_idx)) {
      double tokens = net.place(p).marking;
      for (std::size_t e : net.in_productions(p)) {
        const auto& edge = net.productions()[e];
        tokens += edge.multiplicity * (edge.delay == 1
                                           ? s.transitions[edge.transition]
                                           : next.transitions[edge.transition]);
      }
      fired = std::min(fired, tokens);
    }
    next.transitions[q_idx] = fired;
  }
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    double arrived = 0.0;
    for (std::size_t e : net.in_productions(p)) {
      const auto& edge = net.productions()[e];
      arrived += edge.multiplicity * (edge.delay == 1
                                          ? s.transitions[edge.transition]
                                          : next.transitions[edge.transition]);
    }
    next.places[p] = arrived;
  }
  return next;
}

std::function<std::vector<double>(const std::vector<double>&)>
eliminate_places(const PetriNet& net) {
  const auto diag = validate_deterministic(net);
  if (!diag.ok)
    throw std::invalid_argument("eliminate_places needs a deterministic net");
  PetriNet copy = net;
  return [copy](const std::vector<double>& q) {
    NetState s;
    s.places.assign(copy.place_count(), 0.0);
    s.transitions = q;
    return step(copy, s).transitions;
  };
}

std::function<std::vector<double>(const std::vector<double>&)>
eliminate_transitions(const PetriNet& net) {
  const auto diag = validate_deterministic(net);
  if (!diag.ok)
    throw std::invalid_argument("eliminate_transitions needs a deterministic net");
  if (net.has_zero_delay())
    throw std::invalid_argument(
        "eliminate_transitions: zero-delay edges make the place recursion implicit");
  const DenseMatrix h = net.production_matrix();
  const MinPlusMatrix d = net.synchronization_matrix();
  return [h, d](const std::vector<double>& p) {
    // Q = D otimes P, then P' = H Q.
    std::vector<double> q(d.rows(), kInf);
    for (std::size_t i = 0; i < d.rows(); ++i) {
      double best = kInf;
      for (std::size_t j = 0; j < d.cols(); ++j) {
        const ExtendedReal e = d.at(i, j);
        if (e.is_eps()) continue;
        best = std::min(best, e.value() + p[j]);
      }
      q[i] = best;
    }
    std::vector<double> np(h.rows, 0.0);
    for (std::size_t i = 0; i < h.rows; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < h.cols; ++j)
        if (h.at(i, j) != 0.0) acc += h.at(i, j) * q[j];
      np[i] = acc;
    }
    return np;
  };
}

std::vector<std::vector<double>> constraint_residual(
    const PetriNet& net, const std::vector<NetState>& trajectory) {
  std::vector<std::vector<double>> residuals;
  for (std::size_t k = 1; k < trajectory.size(); ++k) {
    const auto& prev = trajectory[k - 1];
    const auto& cur = trajectory[k];
    std::vector<double> row(net.transition_count(), 0.0);
    for (std::size_t q = 0; q < net.transition_count(); ++q) {
      const auto in = net.in_places(q);
      if (in.empty()) continue;
      double best = kInf;
      for (std::size_t p : in) {
        double v = net.place(p).marking;
        for (std::size_t e : net.in_productions(p)) {
          const auto& edge = net.productions()[e];
          v += edge.multiplicity * (edge.delay == 1
                                        ? prev.transitions[edge.transition]
                                        : cur.transitions[edge.transition]);
        }
        for (std::size_t qq : net.downstream(p)) v -= cur.transitions[qq];
        best = std::min(best, v);
      }
      row[q] = best;
    }
    residuals.push_back(std::move(row));
  }
  return residuals;
}

bool is_event_graph(const PetriNet& net) {
  for (const auto& e : net.productions())
    if (e.multiplicity != 1.0 || e.delay != 1) return false;
  for (std::size_t p = 0; p < net.place_count(); ++p)
    if (net.in_productions(p).size() != 1 || net.downstream(p).size() != 1)
      return false;
  return true;
}

MinPlusMatrix event_graph_matrix(const PetriNet& net) {
  if (!is_event_graph(net))
    throw std::invalid_argument("not an event graph");
  MinPlusMatrix a(net.transition_count(), net.transition_count());
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    const std::size_t from = net.productions()[net.in_productions(p)[0]].transition;
    const std::size_t to = net.downstream(p)[0];
    a.at(to, from) = oplus(a.at(to, from), ExtendedReal(net.place(p).marking));
  }
  return a;
}

namespace {

PetriNet copy_without_place(const PetriNet& net, std::size_t drop,
                            std::vector<std::size_t>& place_map) {
  PetriNet out;
  place_map.assign(net.place_count(), std::size_t(-1));
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    if (p == drop) continue;
    place_map[p] = out.add_place(net.place(p).id, net.place(p).marking);
  }
  for (std::size_t q = 0; q < net.transition_count(); ++q)
    out.add_transition(net.transition(q));
  for (const auto& e : net.productions())
    if (e.place != drop)
      out.add_production(e.transition, place_map[e.place], e.multiplicity,
                         e.delay);
  for (const auto& s : net.syncs())
    if (s.place != drop) out.add_sync(place_map[s.place], s.transition);
  return out;
}

void require_two_way(const PetriNet& net, std::size_t place,
                     const std::vector<std::size_t>& down) {
  if (down.size() < 2)
    throw std::invalid_argument("place '" + net.place(place).id +
                                "' has no conflict to resolve");
  if (down.size() > 2)
    throw std::invalid_argument(
        "conflict resolution supports exactly two downstream transitions");
}

}  // namespace

PetriNet build_routing_resolution(const PetriNet& net, std::size_t place,
                                  const std::vector<double>& fractions) {
  const auto down = net.downstream(place);
  require_two_way(net, place, down);
  if (fractions.size() != down.size())
    throw std::invalid_argument("one fraction per downstream transition");
  double sum = 0.0;
  for (double f : fractions) sum += f;
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("routing fractions must sum to 1");

  const double marking = net.place(place).marking;
  const auto inflow = net.in_productions(place);
  std::vector<std::size_t> place_map;
  PetriNet out = copy_without_place(net, place, place_map);
  for (std::size_t i = 0; i < down.size(); ++i) {
    // First transition keeps the marking, each gets its share of inflow.
    const double a = i == 0 ? marking : 0.0;
    const std::size_t np =
        out.add_place(net.place(place).id + ":" + net.transition(down[i]), a);
    for (std::size_t e : inflow) {
      const auto& edge = net.productions()[e];
      out.add_production(edge.transition, np, fractions[i] * edge.multiplicity,
                         edge.delay);
    }
    out.add_sync(np, down[i]);
  }
  return out;
}

PetriNet build_priority_resolution(
    const PetriNet& net, std::size_t place,
    const std::vector<std::size_t>& priority_order) {
  const auto down = net.downstream(place);
  require_two_way(net, place, down);
  if (priority_order.size() != 2 ||
      std::find(down.begin(), down.end(), priority_order[0]) == down.end() ||
      std::find(down.begin(), down.end(), priority_order[1]) == down.end() ||
      priority_order[0] == priority_order[1])
    throw std::invalid_argument(
        "priority order must list the two downstream transitions");

  const std::size_t winner = priority_order[0];
  const std::size_t loser = priority_order[1];
  const double marking = net.place(place).marking;
  const auto inflow = net.in_productions(place);
  std::vector<std::size_t> place_map;
  PetriNet out = copy_without_place(net, place, place_map);

  const std::size_t pw =
      out.add_place(net.place(place).id + ":" + net.transition(winner), marking);
  for (std::size_t e : inflow) {
    const auto& edge = net.productions()[e];
    out.add_production(edge.transition, pw, edge.multiplicity, edge.delay);
  }
  out.add_production(loser, pw, -1.0, 1);  // winner sees the loser's past firings
  out.add_sync(pw, winner);

  const std::size_t pl =
      out.add_place(net.place(place).id + ":" + net.transition(loser), marking);
  for (std::size_t e : inflow) {
    const auto& edge = net.productions()[e];
    out.add_production(edge.transition, pl, edge.multiplicity, edge.delay);
  }
  out.add_production(winner, pl, -1.0, 0);  // same-step subtraction
  out.add_sync(pl, loser);
  return out;
}

}  // namespace minplus
