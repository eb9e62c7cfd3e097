#include "minplus/system.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace minplus {

SystemDyn SystemDyn::make(KindVector state_kinds, KindVector input_kinds,
                          KindVector output_kinds) {
  SystemDyn s;
  s.a = HybridMatrix(state_kinds, state_kinds);
  s.b = HybridMatrix(state_kinds, input_kinds);
  s.c = HybridMatrix(output_kinds, state_kinds);
  s.state_kinds = std::move(state_kinds);
  s.input_kinds = std::move(input_kinds);
  s.output_kinds = std::move(output_kinds);
  return s;
}

void SystemDyn::check() const {
  if (a.row_kinds() != state_kinds || a.col_kinds() != state_kinds ||
      b.row_kinds() != state_kinds || b.col_kinds() != input_kinds ||
      c.row_kinds() != output_kinds || c.col_kinds() != state_kinds)
    throw std::invalid_argument("system blocks inconsistent with signature");
}

namespace {

// One row of [M1 M2] boxtimes [x1; x2].
ExtendedReal row_apply2(const HybridMatrix& m1, const HybridMatrix& m2,
                        std::size_t i, const std::vector<ExtendedReal>& x1,
                        const std::vector<ExtendedReal>& x2) {
  if (m1.row_kind(i) == RowKind::standard) {
    ExtendedReal acc(0.0);
    for (std::size_t j = 0; j < m1.cols(); ++j)
      acc = std_add(acc, std_mul(m1.at(i, j), x1[j]));
    for (std::size_t j = 0; j < m2.cols(); ++j)
      acc = std_add(acc, std_mul(m2.at(i, j), x2[j]));
    return acc;
  }
  ExtendedReal acc = ExtendedReal::eps();
  for (std::size_t j = 0; j < m1.cols(); ++j)
    acc = oplus(acc, otimes(m1.at(i, j), x1[j]));
  for (std::size_t j = 0; j < m2.cols(); ++j)
    acc = oplus(acc, otimes(m2.at(i, j), x2[j]));
  return acc;
}

void copy_block(HybridMatrix& dst, const HybridMatrix& src, std::size_t r0,
                std::size_t c0) {
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j)
      dst.at(r0 + i, c0 + j) = src.at(i, j);
}

KindVector concat(const KindVector& a, const KindVector& b) {
  KindVector r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

}  // namespace

SimulationTrace simulate(const SystemDyn& s,
                         const std::vector<ExtendedReal>& x0,
                         const std::vector<std::vector<ExtendedReal>>& inputs) {
  s.check();
  if (x0.size() != s.state_kinds.size())
    throw std::invalid_argument("simulate: bad initial state size");
  SimulationTrace tr;
  std::vector<ExtendedReal> x = x0;
  tr.states.push_back(x);
  for (const auto& u : inputs) {
    if (u.size() != s.input_kinds.size())
      throw std::invalid_argument("simulate: bad input size");
    tr.outputs.push_back(htimes_vec(s.c, x));
    std::vector<ExtendedReal> nx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      nx[i] = row_apply2(s.a, s.b, i, x, u);
    x = std::move(nx);
    tr.states.push_back(x);
  }
  return tr;
}

SystemDyn parallel(const SystemDyn& s1, const SystemDyn& s2) {
  s1.check();
  s2.check();
  if (s1.input_kinds != s2.input_kinds || s1.output_kinds != s2.output_kinds)
    throw std::invalid_argument("parallel: signature mismatch");
  SystemDyn r = SystemDyn::make(concat(s1.state_kinds, s2.state_kinds),
                                s1.input_kinds, s1.output_kinds);
  copy_block(r.a, s1.a, 0, 0);
  copy_block(r.a, s2.a, s1.state_kinds.size(), s1.state_kinds.size());
  copy_block(r.b, s1.b, 0, 0);
  copy_block(r.b, s2.b, s1.state_kinds.size(), 0);
  copy_block(r.c, s1.c, 0, 0);
  copy_block(r.c, s2.c, 0, s1.state_kinds.size());
  return r;
}

SystemDyn series(const SystemDyn& s1, const SystemDyn& s2) {
  s1.check();
  s2.check();
  if (s2.output_kinds != s1.input_kinds)
    throw std::invalid_argument("series: output of S2 must feed input of S1");
  const std::size_t n1 = s1.state_kinds.size();
  const std::size_t n2 = s2.state_kinds.size();
  const KindVector state =
      concat(concat(s1.state_kinds, s2.state_kinds), s2.output_kinds);
  SystemDyn r = SystemDyn::make(state, s2.input_kinds, s1.output_kinds);
  copy_block(r.a, s1.a, 0, 0);
  copy_block(r.a, s1.b, 0, n1 + n2);  // S1 driven by the Y2 part of the state
  copy_block(r.a, s2.a, n1, n1);
  copy_block(r.a, s2.c, n1 + n2, n1);
  copy_block(r.b, s2.b, n1, 0);
  copy_block(r.c, s1.c, 0, 0);
  return r;
}

SystemDyn feedback(const SystemDyn& s) {
  s.check();
  if (s.input_kinds != s.output_kinds)
    throw std::invalid_argument("feedback: input and output kinds must match");
  const std::size_t n = s.state_kinds.size();
  SystemDyn r = SystemDyn::make(concat(s.state_kinds, s.output_kinds),
                                s.input_kinds, s.output_kinds);
  copy_block(r.a, s.a, 0, 0);
  copy_block(r.a, s.b, 0, n);
  copy_block(r.a, s.c, n, 0);
  copy_block(r.b, s.b, 0, 0);
  copy_block(r.c, s.c, 0, 0);
  return r;
}

std::vector<ExtendedReal> parallel_initial(
    const std::vector<ExtendedReal>& x1, const std::vector<ExtendedReal>& x2) {
  std::vector<ExtendedReal> r = x1;
  r.insert(r.end(), x2.begin(), x2.end());
  return r;
}

std::vector<ExtendedReal> series_initial(const SystemDyn& s1,
                                         const SystemDyn& s2,
                                         const std::vector<ExtendedReal>& x1,
                                         const std::vector<ExtendedReal>& x2,
                                         InitialOutput init) {
  (void)s1;
  std::vector<ExtendedReal> r = x1;
  r.insert(r.end(), x2.begin(), x2.end());
  std::vector<ExtendedReal> y0;
  if (init == InitialOutput::from_state) {
    y0 = htimes_vec(s2.c, x2);
  } else {
    y0.assign(s2.output_kinds.size(), ExtendedReal(0.0));
  }
  r.insert(r.end(), y0.begin(), y0.end());
  return r;
}

std::vector<ExtendedReal> feedback_initial(const SystemDyn& s,
                                           const std::vector<ExtendedReal>& x,
                                           InitialOutput init) {
  std::vector<ExtendedReal> r = x;
  std::vector<ExtendedReal> y0;
  if (init == InitialOutput::from_state) {
    y0 = htimes_vec(s.c, x);
  } else {
    y0.assign(s.output_kinds.size(), ExtendedReal(0.0));
  }
  r.insert(r.end(), y0.begin(), y0.end());
  return r;
}

bool system_is_homogeneous(const SystemDyn& s) {
  // Standard state rows span [A | B]; standard output rows span C.
  for (std::size_t i = 0; i < s.state_kinds.size(); ++i) {
    if (s.state_kinds[i] != RowKind::standard) continue;
    double sum = 0.0;
    for (std::size_t j = 0; j < s.a.cols(); ++j) {
      if (!s.a.at(i, j).is_finite()) return false;
      sum += s.a.at(i, j).value();
    }
    for (std::size_t j = 0; j < s.b.cols(); ++j) {
      if (!s.b.at(i, j).is_finite()) return false;
      sum += s.b.at(i, j).value();
    }
    if (std::abs(sum - 1.0) > 1e-12) return false;
  }
  return is_homogeneous(s.c);
}

IOPetriSystem::Output IOPetriSystem::step(State& s,
                                          const std::vector<double>& u_next,
                                          const std::vector<double>& v_now) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Output out;
  std::vector<double> p_next(a.rows, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) acc += a.at(i, j) * s.transitions[j];
    for (std::size_t j = 0; j < b.cols; ++j) acc += b.at(i, j) * v_now[j];
    p_next[i] = acc;
  }
  std::vector<double> q_next(c.rows(), inf);
  for (std::size_t i = 0; i < c.rows(); ++i) {
    double best = inf;
    for (std::size_t j = 0; j < c.cols(); ++j)
      if (!c.at(i, j).is_eps())
        best = std::min(best, c.at(i, j).value() + p_next[j]);
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (!d.at(i, j).is_eps())
        best = std::min(best, d.at(i, j).value() + u_next[j]);
    q_next[i] = best;
  }
  out.places.assign(e.rows, 0.0);
  for (std::size_t i = 0; i < e.rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < e.cols; ++j) acc += e.at(i, j) * s.transitions[j];
    out.places[i] = acc;
  }
  out.transitions.assign(f.rows(), inf);
  for (std::size_t i = 0; i < f.rows(); ++i) {
    double best = inf;
    for (std::size_t j = 0; j < f.cols(); ++j)
      if (!f.at(i, j).is_eps())
        best = std::min(best, f.at(i, j).value() + p_next[j]);
    out.transitions[i] = best;
  }
  s.places = std::move(p_next);
  s.transitions = std::move(q_next);
  return out;
}

IOPetriSystem make_io_system(const PetriNet& net) {
  if (net.has_zero_delay())
    throw std::invalid_argument(
        "io system: zero-delay edges would make the place equation implicit");
  IOPetriSystem sys;
  std::vector<int> place_role(net.place_count(), 1);   // 0 in, 1 state, 2 out
  std::vector<int> trans_role(net.transition_count(), 1);
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    const bool has_up = !net.in_productions(p).empty();
    const bool has_down = !net.downstream(p).empty();
    if (!has_up) place_role[p] = 0;
    else if (!has_down) place_role[p] = 2;
  }
  for (std::size_t q = 0; q < net.transition_count(); ++q) {
    const bool has_up = !net.in_places(q).empty();
    bool has_down = false;
    for (const auto& e : net.productions())
      if (e.transition == q) has_down = true;
    if (!has_up) trans_role[q] = 0;
    else if (!has_down) trans_role[q] = 2;
  }
  std::vector<std::size_t> pidx(net.place_count()), qidx(net.transition_count());
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    auto& bucket = place_role[p] == 0   ? sys.input_places
                   : place_role[p] == 2 ? sys.output_places
                                        : sys.state_places;
    pidx[p] = bucket.size();
    bucket.push_back(p);
  }
  for (std::size_t q = 0; q < net.transition_count(); ++q) {
    auto& bucket = trans_role[q] == 0   ? sys.input_transitions
                   : trans_role[q] == 2 ? sys.output_transitions
                                        : sys.state_transitions;
    qidx[q] = bucket.size();
    bucket.push_back(q);
  }
  sys.a = DenseMatrix(sys.state_places.size(), sys.state_transitions.size());
  sys.b = DenseMatrix(sys.state_places.size(), sys.input_transitions.size());
  sys.e = DenseMatrix(sys.output_places.size(), sys.state_transitions.size());
  sys.c = MinPlusMatrix(sys.state_transitions.size(), sys.state_places.size());
  sys.d = MinPlusMatrix(sys.state_transitions.size(), sys.input_places.size());
  sys.f = MinPlusMatrix(sys.output_transitions.size(), sys.state_places.size());
  for (const auto& e : net.productions()) {
    if (trans_role[e.transition] == 2) continue;  // outputs have no out edges
    if (place_role[e.place] == 1 && trans_role[e.transition] == 1)
      sys.a.at(pidx[e.place], qidx[e.transition]) += e.multiplicity;
    else if (place_role[e.place] == 1 && trans_role[e.transition] == 0)
      sys.b.at(pidx[e.place], qidx[e.transition]) += e.multiplicity;
    else if (place_role[e.place] == 2 && trans_role[e.transition] == 1)
      sys.e.at(pidx[e.place], qidx[e.transition]) += e.multiplicity;
  }
  for (const auto& s : net.syncs()) {
    const ExtendedReal a_p(net.place(s.place).marking);
    if (place_role[s.place] == 1 && trans_role[s.transition] == 1)
      sys.c.at(qidx[s.transition], pidx[s.place]) = a_p;
    else if (place_role[s.place] == 0 && trans_role[s.transition] == 1)
      sys.d.at(qidx[s.transition], pidx[s.place]) = a_p;
    else if (place_role[s.place] == 1 && trans_role[s.transition] == 2)
      sys.f.at(qidx[s.transition], pidx[s.place]) = a_p;
  }
  return sys;
}

}  // namespace minplus
