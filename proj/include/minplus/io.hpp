#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "minplus/hybrid.hpp"
#include "minplus/matrix.hpp"
#include "minplus/petri.hpp"
#include "minplus/system.hpp"
#include "minplus/traffic.hpp"

namespace minplus {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense text matrix: one row per line, whitespace-separated entries,
/// `inf` / `-inf` for the infinities.
MinPlusMatrix parse_minplus_matrix(std::istream& in);
MinPlusMatrix parse_minplus_matrix_file(const std::string& path);
void write_minplus_matrix(std::ostream& out, const MinPlusMatrix& m);

/// Hybrid matrix: `rows: s s p ...` / `cols: ...` headers (s = standard,
/// p = minplus) followed by the dense grid.
HybridMatrix parse_hybrid_matrix(std::istream& in);
void write_hybrid_matrix(std::ostream& out, const HybridMatrix& m);

/// System file: kind declarations for states/inputs/outputs, then the A,
/// B, C grids introduced by `A:` `B:` `C:` lines.
SystemDyn parse_system(std::istream& in);
SystemDyn parse_system_file(const std::string& path);
void write_system(std::ostream& out, const SystemDyn& s);

/// Net description (JSON): places {id, marking, downstream}, transitions,
/// production edges {transition, place, multiplicity, delay?}.
PetriNet parse_net_json(std::istream& in);
PetriNet parse_net_json_file(const std::string& path);
std::string net_to_json(const PetriNet& net);

/// CSV schema: d,lambda_exact,lambda_approx,chi_sim,phase,n,m,seed,K0,K
std::string diagram_csv(const std::vector<DiagramPoint>& points);

/// Best-effort SVG overlay of lambda(d) and chi(d).
std::string diagram_svg(const std::vector<DiagramPoint>& points);

/// Fixed-precision float formatting shared by every writer, so replayed
/// runs are byte-identical.
std::string format_double(double v);

}  // namespace minplus
