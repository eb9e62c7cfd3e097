#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "minplus/matrix.hpp"

namespace minplus {

/// Weighted digraph read off the non-eps entries of a square minplus
/// matrix: edge i -> j exists iff A_ji != eps, with weight A_ji.
struct PrecedenceGraph {
  struct Edge {
    std::size_t from, to;
    double weight;
  };

  explicit PrecedenceGraph(const MinPlusMatrix& a);

  std::size_t node_count = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> out;  // adjacency: edge indices
  std::vector<std::vector<std::size_t>> in;
};

class NotStronglyConnected : public std::runtime_error {
 public:
  NotStronglyConnected(std::size_t from, std::size_t to);
  std::size_t from, to;
};

/// Throws NotStronglyConnected naming an unreachable node pair.
void require_strongly_connected(const PrecedenceGraph& g);
bool is_strongly_connected(const PrecedenceGraph& g);

/// Optimal cycle found by the eigenvalue computation.  mean_weight is
/// recomputed from the node sequence (sum of edge weights in the stored
/// order divided by length), so tests can compare it exactly against an
/// enumeration oracle.
struct CycleStats {
  double mean_weight = 0.0;
  double total_weight = 0.0;
  std::size_t length = 0;
  std::vector<std::size_t> nodes;  // cycle, smallest node first, closing edge implied
};

/// Minimum cycle mean of a strongly connected matrix (Karp's dynamic
/// program) together with a witness cycle extracted from the critical
/// graph.  Ties between optimal cycles are broken deterministically by a
/// smallest-node-first search.
CycleStats min_mean_cycle(const MinPlusMatrix& a);

/// Serial reference for the Karp table fill, kept for testing; the
/// parallel and serial paths are bit-identical.
CycleStats min_mean_cycle_serial(const MinPlusMatrix& a);

/// Eigenvector for the eigenvalue lambda: column of the closure of
/// (A - lambda) picked at a critical node, normalized so the first entry
/// is 0.  Satisfies A otimes X = lambda otimes X within 1e-12.
MinPlusVector eigenvector_linear(const MinPlusMatrix& a, double lambda);

}  // namespace minplus
