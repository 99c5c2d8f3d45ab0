#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ionet/graph.hpp"
#include "ionet/matrix.hpp"
#include "ionet/matrix_ops.hpp"

namespace ionet {

using Agent = std::size_t;
using Industry = std::size_t;

/// Trade link: `importer` consumes goods supplied by `supplier`. Row p of
/// `coefficients` is the consuming industry of the importer, column q the
/// supplying industry of the supplier. Agents are 0-based.
struct TradeEdge {
  Agent importer;
  Agent supplier;
  double weight;
  Matrix coefficients;
};

/// Network of n economies with d industries each, linked by matrix-weighted
/// trade edges. Construction checks shapes, ranges and uniqueness; the
/// economic assumptions are left to validate() so that failing networks can be
/// inspected.
class EconomyNetwork {
 public:
  EconomyNetwork(std::size_t agents, std::size_t industries, std::vector<TradeEdge> edges,
                 std::optional<Vector> demand = std::nullopt,
                 std::optional<Vector> initial_state = std::nullopt,
                 std::vector<std::string> labels = {});

  std::size_t agents() const noexcept { return agents_; }
  std::size_t industries() const noexcept { return industries_; }
  std::size_t dimension() const noexcept { return agents_ * industries_; }
  /// Sorted by (importer, supplier).
  const std::vector<TradeEdge>& edges() const noexcept { return edges_; }
  const TradeEdge* find_edge(Agent importer, Agent supplier) const;
  /// Length n*d, agent-major. Zero when not supplied.
  const Vector& demand() const noexcept { return demand_; }
  /// Length n*d. Uniform with unit mass when not supplied.
  const Vector& initial_state() const noexcept { return initial_state_; }
  bool has_explicit_initial_state() const noexcept { return explicit_x0_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Scalar weight matrix W with W(i, j) = w_ij.
  Matrix weight_matrix() const;
  /// Agent-level trade graph, edge importer -> supplier.
  Digraph agent_graph() const;

  EconomyNetwork with_demand(Vector demand) const;

 private:
  std::size_t agents_;
  std::size_t industries_;
  std::vector<TradeEdge> edges_;
  Vector demand_;
  Vector initial_state_;
  bool explicit_x0_;
  std::vector<std::string> labels_;
};

/// Flat index of (agent, industry), both 0-based: agent * d + industry.
constexpr std::size_t flat_index(Agent agent, Industry industry, std::size_t d) noexcept {
  return agent * d + industry;
}

struct LiftedSystem {
  /// dn x dn, block (i, j) = w_ij * A_ij.
  Matrix a_bar;
  Vector demand;
  std::size_t agents;
  std::size_t industries;

  std::size_t dimension() const noexcept { return agents * industries; }
  std::size_t index_of(Agent agent, Industry industry) const noexcept {
    return flat_index(agent, industry, industries);
  }
};

LiftedSystem build_lifted(const EconomyNetwork& net);

enum class ModelClass { Closed, Open, Invalid };
std::string_view to_string(ModelClass c) noexcept;

struct ValidationReport {
  bool w_column_stochastic = false;
  bool has_out_root = false;
  bool root_subgraph_strongly_connected = false;
  bool root_subgraph_aperiodic = false;
  bool all_edge_matrices_primitive = false;
  bool all_edge_column_sums_at_most_one = false;
  /// Every edge matrix column-stochastic.
  bool all_edge_matrices_column_stochastic = false;
  bool demand_nonzero = false;
  /// Some edge with both endpoints among the out-roots carries a
  /// column-substochastic matrix.
  bool substochastic_edge_in_root_subgraph = false;
  /// Every agent imports along at least one edge whose matrix has all column
  /// sums strictly below one.
  bool per_agent_substochastic_supplier = false;
  ModelClass model_class = ModelClass::Invalid;
  /// Out-root agents, 0-based.
  VertexSet root_set;

  /// All structural assumptions on the weights, roots and edge matrices.
  bool assumptions_hold() const noexcept;
  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

ValidationReport validate(const EconomyNetwork& net, double tol = kStochasticTolerance);

/// Raises the error naming the first failed structural assumption, in the
/// order: out-root, root subgraph, weights, edge column sums, primitivity.
void require_assumptions(const ValidationReport& report);

/// Replaces every edge matrix A by (1 - m) A + (m / d) J, J the all-ones
/// matrix. Raises BadDamping unless 0 < m < 1.
EconomyNetwork regularize_pagerank(const EconomyNetwork& net, double damping);

/// Hawkins-Simon test on I - A_bar: every leading principal minor must exceed
/// the degeneracy threshold, scaled by the k-th power of the block's largest
/// entry.
bool hawkins_simon(const LiftedSystem& sys);

}  // namespace ionet
