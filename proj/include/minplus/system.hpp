#pragma once

#include <vector>

#include "minplus/hybrid.hpp"
#include "minplus/petri.hpp"

namespace minplus {

/// Dynamics X^{k+1} = A boxtimes X^k (+) B boxtimes U^k,
/// Y^{k+1} = C boxtimes X^k, with every state/input/output signal carrying
/// its own standard/minplus kind.
struct SystemDyn {
  KindVector state_kinds, input_kinds, output_kinds;
  HybridMatrix a;  // state x state
  HybridMatrix b;  // state x input
  HybridMatrix c;  // output x state

  static SystemDyn make(KindVector state_kinds, KindVector input_kinds,
                        KindVector output_kinds);
  void check() const;
};

/// How a composite initializes the output-valued part of its state.
enum class InitialOutput { from_state, zero };

struct SimulationTrace {
  std::vector<std::vector<ExtendedReal>> states;   // X^0..X^K
  std::vector<std::vector<ExtendedReal>> outputs;  // Y^1..Y^K (Y^{k+1} = C (x) X^k)
};

SimulationTrace simulate(const SystemDyn& s,
                         const std::vector<ExtendedReal>& x0,
                         const std::vector<std::vector<ExtendedReal>>& inputs);

/// Same entries, outputs added (standard rows) or min-ed (minplus rows).
SystemDyn parallel(const SystemDyn& s1, const SystemDyn& s2);

/// S(U) = S1(S2(U)); composite state [X1 X2 Y2].
SystemDyn series(const SystemDyn& s1, const SystemDyn& s2);

/// Solution in Y of Y = S(U boxplus Y); composite state [X Y].
SystemDyn feedback(const SystemDyn& s);

/// Initial state helpers for the composites.
std::vector<ExtendedReal> parallel_initial(
    const std::vector<ExtendedReal>& x1, const std::vector<ExtendedReal>& x2);
std::vector<ExtendedReal> series_initial(
    const SystemDyn& s1, const SystemDyn& s2,
    const std::vector<ExtendedReal>& x1, const std::vector<ExtendedReal>& x2,
    InitialOutput init = InitialOutput::from_state);
std::vector<ExtendedReal> feedback_initial(
    const SystemDyn& s, const std::vector<ExtendedReal>& x,
    InitialOutput init = InitialOutput::from_state);

/// True iff every standard row of every block has finite coefficients
/// summing to 1 (shift equivariance of the whole system).
bool system_is_homogeneous(const SystemDyn& s);

/// Input-output Petri system, Eq.-(PetriProd) layout: transitions split
/// into inputs V / states Q / outputs Z, places into U / P / Y.  The
/// P-equation is explicit (A acts on Q^k and V^k only); the implicit
/// P^{k+1} on the right-hand side resolves triangularly.
struct IOPetriSystem {
  std::vector<std::size_t> state_places, state_transitions;
  std::vector<std::size_t> input_places, input_transitions;
  std::vector<std::size_t> output_places, output_transitions;

  DenseMatrix a;      // |P| x |Q|
  DenseMatrix b;      // |P| x |V|
  MinPlusMatrix c;    // |Q| x |P|
  MinPlusMatrix d;    // |Q| x |U|
  DenseMatrix e;      // |Y| x |Q|
  MinPlusMatrix f;    // |Z| x |P|

  struct State {
    std::vector<double> places, transitions;
  };
  struct Output {
    std::vector<double> places, transitions;  // Y^{k+1}, Z^{k+1}
  };

  /// One step: P^{k+1} = A Q^k + B V^k; Q^{k+1} = C (x) P^{k+1} (+) D (x) U^{k+1};
  /// Y^{k+1} = E Q^k; Z^{k+1} = F (x) P^{k+1}.
  Output step(State& s, const std::vector<double>& u_next,
              const std::vector<double>& v_now) const;
};

/// Splits a net into the (PetriProd) blocks.  Inputs are nodes without
/// upstream edges, outputs are nodes without downstream edges; zero-delay
/// edges are rejected (they would make the P-equation implicit).
IOPetriSystem make_io_system(const PetriNet& net);

}  // namespace minplus
