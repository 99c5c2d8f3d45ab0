#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ionet/matrix.hpp"

namespace ionet {

using Vertex = std::size_t;
using VertexSet = std::vector<Vertex>;  // sorted ascending, no duplicates

/// Directed graph on vertices 0..n-1. Self-loops are allowed, parallel edges
/// are not. Edge (u, v) has tail u and head v.
class Digraph {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  Digraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return successors_.size(); }
  /// Edges sorted lexicographically.
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Vertex> successors(Vertex v) const { return successors_.at(v); }
  std::span<const Vertex> predecessors(Vertex v) const { return predecessors_.at(v); }
  bool has_edge(Vertex u, Vertex v) const;

  Digraph reversed() const;
  /// Subgraph induced on `vertices`, relabeled 0..k-1 in the given order.
  Digraph induced(std::span<const Vertex> vertices) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> successors_;
  std::vector<std::vector<Vertex>> predecessors_;
};

/// Edge (i, j) whenever M(i, j) > threshold.
Digraph graph_from_matrix(const Matrix& m, double threshold = 0.0);

struct SccDecomposition {
  std::vector<std::size_t> component_of;
  std::size_t component_count = 0;
  /// Edges between distinct components, sorted, without duplicates.
  std::vector<std::pair<std::size_t, std::size_t>> condensation_edges;

  VertexSet members(std::size_t component) const;
};

/// Tarjan's algorithm. Components come out in reverse topological order of
/// the condensation: every condensation edge (a, b) has a > b.
SccDecomposition scc(const Digraph& g);

/// Vertices reachable from `source` (including itself).
VertexSet reachable_from(const Digraph& g, Vertex source);

struct RootReport {
  /// Vertices that reach every vertex.
  VertexSet out_roots;
  /// Vertices reached from every vertex.
  VertexSet in_roots;
  /// Properties of the subgraph induced on out_roots.
  bool root_component_strongly_connected = false;
  bool root_component_aperiodic = false;
  /// Same properties for the subgraph induced on in_roots.
  bool in_root_component_strongly_connected = false;
  bool in_root_component_aperiodic = false;
};

RootReport root_report(const Digraph& g);

/// Aperiodicity of one strongly connected component of g, from BFS levels:
/// the period is the gcd over component edges (u, v) of |level(u) + 1 - level(v)|.
/// A single vertex without a self-loop has no cycle and is reported periodic.
/// Raises NotStronglyConnected if `component` is not exactly one SCC.
bool is_aperiodic(const Digraph& g, std::span<const Vertex> component);

/// Strongly connected on all vertices and aperiodic.
bool is_primitive_graph(const Matrix& m);

}  // namespace ionet
