#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minplus/homogeneous.hpp"
#include "minplus/matrix.hpp"
#include "minplus/petri.hpp"

namespace minplus {

// ---------------------------------------------------------------------------
// Circular road
// ---------------------------------------------------------------------------

/// Circular road cut in m sections; occupancy in [0,1] per section
/// (booleans for the exclusion process, fluid for the event graph).
struct RoadConfig {
  std::vector<double> occupancy;

  std::size_t sections() const { return occupancy.size(); }
  double vehicle_count() const;
  double density() const { return vehicle_count() / double(sections()); }
};

/// One parallel update of the rule 10 -> 01 on a circular boolean word.
std::vector<int> exclusion_step(const std::vector<int>& w);

struct ExclusionFlow {
  double flow = 0.0;       // moves per step per section, eventual regime
  bool periodic = false;   // regime detected within the horizon
  std::size_t transient = 0, period = 0;
  std::size_t moves_per_period = 0;  // flow = moves / (period * m), exactly
  std::string diagnostic;
};

/// Simulates until the configuration repeats and averages the moves over
/// one period.  Equals min(rho, 1 - rho) for boolean words.
ExclusionFlow exclusion_flow(const std::vector<int>& w0, std::size_t horizon);

/// m x m minplus matrix of q_s' = min(a_{s-1} + q_{s-1}, abar_s + q_{s+1}),
/// indices mod m written circularly.
MinPlusMatrix road_event_graph(const RoadConfig& cfg);

/// The same dynamics as a Petri net (an event graph).
PetriNet road_event_graph_net(const RoadConfig& cfg);

// ---------------------------------------------------------------------------
// Two roads with one junction
// ---------------------------------------------------------------------------

/// Marking of the two-road crossing: sections 1..n (road with priority;
/// section n is the junction slot toward it) and n+1..n+m.  The pair
/// (a_n, a_{n+m}) shares the junction cell: a_n + a_{n+m} <= 1 and
/// abar_n = abar_{n+m} = 1 - a_n - a_{n+m}.
struct JunctionConfig {
  std::size_t n = 0, m = 0;
  std::vector<double> a;  // a[i-1] is the paper's a_i

  std::size_t N() const { return n + m; }
  double rho() const { return 1.0 / double(N()); }
  double r() const { return double(m) / double(N()); }
  double density() const;

  double at(std::size_t i) const { return a[i - 1]; }      // 1-based
  double abar(std::size_t i) const;                        // 1-based
  double road1_mass() const;  // b_n = a_1 + ... + a_{n-1}
  double road2_mass() const;  // b_m = a_{n+1} + ... + a_{n+m-1}

  void validate() const;  // throws on violated marking constraints
};

struct PhaseBoundaries {
  double alpha, beta, gamma;
};

enum class Phase { free_flow, saturation, recession, freeze };
const char* phase_name(Phase p);

PhaseBoundaries phase_boundaries(std::size_t n, std::size_t m);

/// Bands of the eigenvalue table containing d (several near boundaries
/// or when gamma < beta).
std::vector<Phase> phases_of(std::size_t n, std::size_t m, double d);

/// Headline label: freeze once d >= gamma, then the band order.
Phase phase_of(std::size_t n, std::size_t m, double d);

/// The junction dynamics as a PWA-backed homogeneous map; the equation
/// for q_{n+m} consumes the freshly computed q_n of the same step.
HomogeneousMap junction_dynamics(const JunctionConfig& cfg);

/// The same dynamics as a deterministic Petri net with negative weights;
/// the same-step dependence rides on a zero-delay edge.
PetriNet junction_net(const JunctionConfig& cfg);

/// Reduced eigenvector (U, V, X, Y) = (q_n, q_{n+m}, q_1, q_{n+1}),
/// normalized X = 0.
struct ReducedEigenvector {
  double u = 0, v = 0, x = 0, y = 0;
};

/// The eigenvector column of the given phase evaluated at lambda.
ReducedEigenvector junction_eigvec_table(const JunctionConfig& cfg, Phase phase,
                                         double lambda);

/// Interior components from the reduced ones by the two path formulas;
/// needs lambda < 1/2 for the elimination to be unique.
std::vector<double> expand_eigenvector(const JunctionConfig& cfg,
                                       const ReducedEigenvector& red,
                                       double lambda);

/// Componentwise residual of the full eigenvalue system at (lambda, q).
struct ResidualReport {
  double max_residual = 0.0;
  std::size_t worst_equation = 0;  // 1-based section index
  bool lambda_in_range = true;     // 0 <= lambda <= 1/4 (+tol)
  std::vector<double> residuals;

  bool pass(double tol = 1e-9) const {
    return lambda_in_range && max_residual < tol;
  }
};

ResidualReport verify_eigenpair(const JunctionConfig& cfg, double lambda,
                                const std::vector<double>& q);

double lambda_free(const JunctionConfig& cfg);            // (1-rho) d
double lambda_recession_table(const JunctionConfig& cfg); // (r-(1-rho)d)/(2r-1+2rho)
double lambda_recession_appendix(const JunctionConfig& cfg); // ((N-1)d-(m-1))/(n-m+2)

/// max(min(d, 1/4, (r-d)/(2r-1)), 0); valid approximation for r > 1/2.
double junction_lambda_approx(double d, double r);

/// Closed-form eigenvalue with verification: every in-band candidate is
/// built, expanded and checked against the dynamics residual; the
/// recession band carries two disagreeing candidate formulas and the
/// residual decides per configuration.
struct LambdaExact {
  struct Candidate {
    Phase phase;
    double lambda = 0.0;
    const char* formula = "";
    bool pass = false;
    double residual = 0.0;
    ReducedEigenvector reduced;
    std::vector<double> full;
  };
  bool ok = false;
  double lambda = 0.0;
  Phase phase = Phase::free_flow;
  std::vector<Candidate> candidates;
};

LambdaExact junction_lambda_exact(const JunctionConfig& cfg);

enum class Placement { even, random };

/// Marking with total mass d * (N-1): `even` spreads uniformly (junction
/// pair split in half), `random` places seeded random mass cell by cell
/// respecting the unit caps.
JunctionConfig marking_from_density(std::size_t n, std::size_t m, double d,
                                    Placement policy, std::uint64_t seed);

struct DiagramPoint {
  double d = 0.0;
  double lambda_exact = 0.0;
  double lambda_approx = 0.0;
  double chi_sim = 0.0;
  Phase phase = Phase::free_flow;
  std::size_t n = 0, m = 0;
  std::uint64_t seed = 0;
  std::size_t burn_in = 0, horizon = 0;
  bool sim_ok = true;
  std::string error;
};

struct SweepParams {
  std::size_t burn_in = 0;   // 0: default 200 N
  std::size_t horizon = 0;   // 0: default 2000 N
  std::uint64_t seed = 1;
  Placement placement = Placement::even;
  bool parallel = true;
};

/// One DiagramPoint per grid density (several at an exact phase boundary
/// where the table is multi-valued); points independent, sweep parallel.
std::vector<DiagramPoint> diagram_sweep(std::size_t n, std::size_t m,
                                        const std::vector<double>& grid,
                                        const SweepParams& params);

std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

}  // namespace minplus
