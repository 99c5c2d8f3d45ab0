#include "ionet/economy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ionet/error.hpp"

namespace ionet {
namespace {

// Roundoff allowance on the unit upper bound of coefficients, so convex
// combinations such as the PageRank blend stay admissible.
constexpr double kCoefficientSlack = 1e-12;

std::string edge_name(const TradeEdge& e) {
  return "edge (" + std::to_string(e.importer + 1) + "," + std::to_string(e.supplier + 1) + ")";
}

void require_state_vector(const Vector& v, std::size_t dim, const char* what) {
  if (v.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has " +
                                                  std::to_string(v.size()) + " entries, expected " +
                                                  std::to_string(dim));
  }
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k]) || v[k] < 0.0) {
      throw Error(ErrorCode::ValueError, std::string(what) + " entry " + std::to_string(k + 1) +
                                             " must be finite and nonnegative");
    }
  }
}

bool all_columns_below_one(const Vector& sums, double tol) {
  return std::all_of(sums.begin(), sums.end(), [tol](double s) { return s < 1.0 - tol; });
}

}  // namespace

EconomyNetwork::EconomyNetwork(std::size_t agents, std::size_t industries,
                               std::vector<TradeEdge> edges, std::optional<Vector> demand,
                               std::optional<Vector> initial_state,
                               std::vector<std::string> labels)
    : agents_(agents),
      industries_(industries),
      edges_(std::move(edges)),
      explicit_x0_(initial_state.has_value()),
      labels_(std::move(labels)) {
  if (agents_ == 0 || industries_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "network needs at least one agent and one industry");
  }
  for (const auto& e : edges_) {
    if (e.importer >= agents_ || e.supplier >= agents_) {
      throw Error(ErrorCode::InvalidArgument, edge_name(e) + " refers to a missing agent");
    }
    if (!(e.weight >= 0.0 && e.weight <= 1.0)) {
      throw Error(ErrorCode::ValueError, edge_name(e) + " weight outside [0,1]");
    }
    if (e.coefficients.rows() != industries_ || e.coefficients.cols() != industries_) {
      throw Error(ErrorCode::DimensionMismatch,
                  edge_name(e) + " matrix is " + std::to_string(e.coefficients.rows()) + "x" +
                      std::to_string(e.coefficients.cols()) + ", expected " +
                      std::to_string(industries_) + "x" + std::to_string(industries_));
    }
    for (double a : e.coefficients.data()) {
      if (!(a >= 0.0 && a <= 1.0 + kCoefficientSlack)) {
        throw Error(ErrorCode::ValueError, edge_name(e) + " coefficient outside [0,1]");
      }
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const TradeEdge& a, const TradeEdge& b) {
    return std::pair(a.importer, a.supplier) < std::pair(b.importer, b.supplier);
  });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].importer == edges_[k - 1].importer &&
        edges_[k].supplier == edges_[k - 1].supplier) {
      throw Error(ErrorCode::InvalidArgument, "duplicate " + edge_name(edges_[k]));
    }
  }

  const std::size_t dim = dimension();
  demand_ = demand.value_or(Vector(dim, 0.0));
  require_state_vector(demand_, dim, "demand");
  initial_state_ = initial_state.value_or(Vector(dim, 1.0 / static_cast<double>(dim)));
  require_state_vector(initial_state_, dim, "x0");
  if (!labels_.empty() && labels_.size() != agents_) {
    throw Error(ErrorCode::DimensionMismatch, "label count must equal the agent count");
  }
}

const TradeEdge* EconomyNetwork::find_edge(Agent importer, Agent supplier) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair(importer, supplier),
                             [](const TradeEdge& e, const std::pair<Agent, Agent>& key) {
                               return std::pair(e.importer, e.supplier) < key;
                             });
  if (it != edges_.end() && it->importer == importer && it->supplier == supplier) return &*it;
  return nullptr;
}

Matrix EconomyNetwork::weight_matrix() const {
  Matrix w(agents_, agents_);
  for (const auto& e : edges_) w(e.importer, e.supplier) = e.weight;
  return w;
}

Digraph EconomyNetwork::agent_graph() const { return graph_from_matrix(weight_matrix()); }

EconomyNetwork EconomyNetwork::with_demand(Vector demand) const {
  return EconomyNetwork(agents_, industries_, edges_, std::move(demand),
                        explicit_x0_ ? std::optional<Vector>(initial_state_) : std::nullopt,
                        labels_);
}

LiftedSystem build_lifted(const EconomyNetwork& net) {
  const std::size_t d = net.industries();
  LiftedSystem sys{Matrix(net.dimension(), net.dimension()), net.demand(), net.agents(), d};
  for (const auto& e : net.edges()) {
    if (e.coefficients.rows() != d || e.coefficients.cols() != d) {
      throw Error(ErrorCode::DimensionMismatch, edge_name(e) + " matrix has the wrong shape");
    }
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = 0; q < d; ++q) {
        sys.a_bar(sys.index_of(e.importer, p), sys.index_of(e.supplier, q)) =
            e.weight * e.coefficients(p, q);
      }
    }
  }
  return sys;
}

std::string_view to_string(ModelClass c) noexcept {
  switch (c) {
    case ModelClass::Closed: return "Closed";
    case ModelClass::Open: return "Open";
    case ModelClass::Invalid: return "Invalid";
  }
  return "Unknown";
}

bool ValidationReport::assumptions_hold() const noexcept {
  return w_column_stochastic && has_out_root && root_subgraph_strongly_connected &&
         root_subgraph_aperiodic && all_edge_matrices_primitive &&
         all_edge_column_sums_at_most_one;
}

ValidationReport validate(const EconomyNetwork& net, double tol) {
  ValidationReport r;
  const Matrix w = net.weight_matrix();

  const auto w_sums = column_sums(w);
  r.w_column_stochastic = std::all_of(w_sums.begin(), w_sums.end(),
                                      [tol](double s) { return std::abs(s - 1.0) <= tol; });

  const auto roots = root_report(net.agent_graph());
  r.root_set = roots.out_roots;
  r.has_out_root = !roots.out_roots.empty();
  r.root_subgraph_strongly_connected = roots.root_component_strongly_connected;
  r.root_subgraph_aperiodic = roots.root_component_aperiodic;

  auto in_root_set = [&](Agent a) {
    return std::binary_search(r.root_set.begin(), r.root_set.end(), a);
  };

  r.all_edge_matrices_primitive = true;
  r.all_edge_column_sums_at_most_one = true;
  r.all_edge_matrices_column_stochastic = true;
  std::vector<bool> has_strict_supplier(net.agents(), false);
  for (const auto& e : net.edges()) {
    const auto cls = classify_columns(e.coefficients, tol);
    r.all_edge_matrices_primitive = r.all_edge_matrices_primitive && is_primitive_graph(e.coefficients);
    if (cls.tag == StochasticTag::NotColumnNonexpansive) r.all_edge_column_sums_at_most_one = false;
    if (cls.tag != StochasticTag::ColumnStochastic) r.all_edge_matrices_column_stochastic = false;
    if (cls.tag == StochasticTag::ColumnSubstochastic && in_root_set(e.importer) &&
        in_root_set(e.supplier)) {
      r.substochastic_edge_in_root_subgraph = true;
    }
    if (all_columns_below_one(cls.column_sums, tol)) has_strict_supplier[e.importer] = true;
  }
  r.per_agent_substochastic_supplier =
      std::all_of(has_strict_supplier.begin(), has_strict_supplier.end(), [](bool b) { return b; });

  const auto& y = net.demand();
  r.demand_nonzero = std::any_of(y.begin(), y.end(), [](double v) { return v != 0.0; });

  if (!r.assumptions_hold()) {
    r.model_class = ModelClass::Invalid;
  } else if (r.all_edge_matrices_column_stochastic && !r.demand_nonzero) {
    r.model_class = ModelClass::Closed;
  } else if (r.demand_nonzero && r.substochastic_edge_in_root_subgraph) {
    r.model_class = ModelClass::Open;
  } else {
    r.model_class = ModelClass::Invalid;
  }
  return r;
}

void require_assumptions(const ValidationReport& r) {
  if (!r.has_out_root) {
    throw Error(ErrorCode::NoOutRoot, "the trade graph has no out-root");
  }
  if (!r.root_subgraph_strongly_connected) {
    throw Error(ErrorCode::RootSubgraphNotStronglyConnected,
                "the out-root subgraph is not strongly connected");
  }
  if (!r.root_subgraph_aperiodic) {
    throw Error(ErrorCode::RootSubgraphPeriodic, "the out-root subgraph is periodic");
  }
  if (!r.w_column_stochastic) {
    throw Error(ErrorCode::WeightsNotColumnStochastic,
                "scalar weights do not sum to one over the importers of every agent");
  }
  if (!r.all_edge_column_sums_at_most_one) {
    throw Error(ErrorCode::EdgeColumnSumExceedsOne, "an edge matrix has a column sum above one");
  }
  if (!r.all_edge_matrices_primitive) {
    throw Error(ErrorCode::EdgeMatrixNotPrimitive, "an edge matrix is not primitive");
  }
}

EconomyNetwork regularize_pagerank(const EconomyNetwork& net, double damping) {
  if (!(damping > 0.0 && damping < 1.0)) {
    throw Error(ErrorCode::BadDamping, "damping must lie strictly between 0 and 1");
  }
  const std::size_t d = net.industries();
  const Matrix teleport = (damping / static_cast<double>(d)) * Matrix::ones(d, d);
  std::vector<TradeEdge> edges = net.edges();
  for (auto& e : edges) e.coefficients = (1.0 - damping) * e.coefficients + teleport;
  return EconomyNetwork(net.agents(), d, std::move(edges), net.demand(),
                        net.has_explicit_initial_state()
                            ? std::optional<Vector>(net.initial_state())
                            : std::nullopt,
                        net.labels());
}

bool hawkins_simon(const LiftedSystem& sys) {
  const Matrix n = Matrix::identity(sys.dimension()) - sys.a_bar;
  const Vector minors = leading_principal_minors(n);
  for (std::size_t k = 1; k <= minors.size(); ++k) {
    const double scale = max_abs(n.leading_block(k));
    const double threshold = kDegeneracyThreshold * std::pow(scale, static_cast<double>(k));
    if (!(minors[k - 1] > threshold)) return false;
  }
  return true;
}

}  // namespace ionet
