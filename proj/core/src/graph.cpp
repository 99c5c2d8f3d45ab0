#include "ionet/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "ionet/error.hpp"

namespace ionet {
namespace {

constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);

VertexSet sorted_unique(std::span<const Vertex> vs) {
  VertexSet out(vs.begin(), vs.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool component_flags_aperiodic(const Digraph& g, const VertexSet& root) {
  if (root.empty()) return false;
  return is_aperiodic(g, root);
}

}  // namespace

Digraph::Digraph(std::size_t vertex_count, std::vector<Edge> edges)
    : edges_(std::move(edges)), successors_(vertex_count), predecessors_(vertex_count) {
  if (vertex_count == 0) {
    throw Error(ErrorCode::InvalidArgument, "digraph needs at least one vertex");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate edge in digraph");
  }
  for (const auto& [u, v] : edges_) {
    if (u >= vertex_count || v >= vertex_count) {
      throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    }
    successors_[u].push_back(v);
    predecessors_[v].push_back(u);
  }
}

bool Digraph::has_edge(Vertex u, Vertex v) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

Digraph Digraph::reversed() const {
  std::vector<Edge> rev;
  rev.reserve(edges_.size());
  for (const auto& [u, v] : edges_) rev.emplace_back(v, u);
  return Digraph(vertex_count(), std::move(rev));
}

Digraph Digraph::induced(std::span<const Vertex> vertices) const {
  std::vector<std::size_t> local(vertex_count(), kUnvisited);
  for (std::size_t i = 0; i < vertices.size(); ++i) local.at(vertices[i]) = i;
  std::vector<Edge> sub;
  for (const auto& [u, v] : edges_) {
    if (local[u] != kUnvisited && local[v] != kUnvisited) sub.emplace_back(local[u], local[v]);
  }
  return Digraph(vertices.size(), std::move(sub));
}

Digraph graph_from_matrix(const Matrix& m, double threshold) {
  if (!m.square()) {
    throw Error(ErrorCode::DimensionMismatch, "graph_from_matrix requires a square matrix");
  }
  std::vector<Digraph::Edge> edges;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) < 0.0) {
        throw Error(ErrorCode::NegativeEntry, "entry (" + std::to_string(i + 1) + "," +
                                                  std::to_string(j + 1) + ") is negative");
      }
      if (m(i, j) > threshold) edges.emplace_back(i, j);
    }
  }
  return Digraph(m.rows(), std::move(edges));
}

VertexSet SccDecomposition::members(std::size_t component) const {
  VertexSet out;
  for (Vertex v = 0; v < component_of.size(); ++v) {
    if (component_of[v] == component) out.push_back(v);
  }
  return out;
}

SccDecomposition scc(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  SccDecomposition out;
  out.component_of.assign(n, kUnvisited);
  std::size_t next_index = 0;

  // Iterative Tarjan: frames hold (vertex, next successor position).
  std::vector<std::pair<Vertex, std::size_t>> frames;
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto succ = g.successors(v);
      if (pos < succ.size()) {
        const Vertex w = succ[pos++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component_of[w] = out.component_count;
        } while (w != v);
        ++out.component_count;
      }
      const Vertex finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        const Vertex parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }

  for (const auto& [u, v] : g.edges()) {
    const auto cu = out.component_of[u];
    const auto cv = out.component_of[v];
    if (cu != cv) out.condensation_edges.emplace_back(cu, cv);
  }
  std::sort(out.condensation_edges.begin(), out.condensation_edges.end());
  out.condensation_edges.erase(
      std::unique(out.condensation_edges.begin(), out.condensation_edges.end()),
      out.condensation_edges.end());
  return out;
}

VertexSet reachable_from(const Digraph& g, Vertex source) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<Vertex> queue{source};
  seen.at(source) = true;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.successors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  VertexSet out;
  for (Vertex v = 0; v < seen.size(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

RootReport root_report(const Digraph& g) {
  const auto dec = scc(g);
  std::vector<std::size_t> in_degree(dec.component_count, 0), out_degree(dec.component_count, 0);
  for (const auto& [a, b] : dec.condensation_edges) {
    ++out_degree[a];
    ++in_degree[b];
  }
  // In a DAG, a unique source reaches every node and a unique sink is reached
  // from every node.
  auto unique_component = [&](const std::vector<std::size_t>& degree) -> std::size_t {
    std::size_t found = kUnvisited;
    for (std::size_t c = 0; c < degree.size(); ++c) {
      if (degree[c] != 0) continue;
      if (found != kUnvisited) return kUnvisited;
      found = c;
    }
    return found;
  };

  RootReport report;
  if (const auto src = unique_component(in_degree); src != kUnvisited) {
    report.out_roots = dec.members(src);
  }
  if (const auto sink = unique_component(out_degree); sink != kUnvisited) {
    report.in_roots = dec.members(sink);
  }
  report.root_component_strongly_connected = !report.out_roots.empty();
  report.root_component_aperiodic = component_flags_aperiodic(g, report.out_roots);
  report.in_root_component_strongly_connected = !report.in_roots.empty();
  report.in_root_component_aperiodic = component_flags_aperiodic(g, report.in_roots);
  return report;
}

bool is_aperiodic(const Digraph& g, std::span<const Vertex> component) {
  const VertexSet members = sorted_unique(component);
  if (members.empty()) {
    throw Error(ErrorCode::NotStronglyConnected, "empty vertex set");
  }
  const Digraph sub = g.induced(members);
  const auto dec = scc(sub);
  if (dec.component_count != 1) {
    throw Error(ErrorCode::NotStronglyConnected,
                "vertex set spans " + std::to_string(dec.component_count) + " components");
  }
  if (sub.edges().empty()) return false;

  std::vector<std::size_t> level(sub.vertex_count(), kUnvisited);
  std::deque<Vertex> queue{0};
  level[0] = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : sub.successors(v)) {
      if (level[w] == kUnvisited) {
        level[w] = level[v] + 1;
        queue.push_back(w);
      }
    }
  }
  std::size_t period = 0;
  for (const auto& [u, v] : sub.edges()) {
    const auto lu = static_cast<long long>(level[u]);
    const auto lv = static_cast<long long>(level[v]);
    const auto diff = static_cast<std::size_t>(std::llabs(lu + 1 - lv));
    period = std::gcd(period, diff);
  }
  return period == 1;
}

bool is_primitive_graph(const Matrix& m) {
  const Digraph g = graph_from_matrix(m);
  const auto dec = scc(g);
  if (dec.component_count != 1) return false;
  VertexSet all(g.vertex_count());
  std::iota(all.begin(), all.end(), Vertex{0});
  return is_aperiodic(g, all);
}

}  // namespace ionet
