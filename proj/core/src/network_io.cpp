#include "ionet/network_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ionet/error.hpp"
#include "ionet/text_format.hpp"

namespace ionet {
namespace {

using json = nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, path + ": " + what);
}

[[noreturn]] void value_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ValueError, path + ": " + what);
}

void allow_only(const json& obj, const std::set<std::string>& keys, const std::string& path) {
  for (const auto& [k, _] : obj.items()) {
    if (!keys.count(k)) schema_error(path.empty() ? k : path + "." + k, "unknown field");
  }
}

const json& require_field(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::size_t positive_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_error(path, "expected an integer");
  const auto i = v.get<long long>();
  if (i < 1) value_error(path, "must be at least 1");
  return static_cast<std::size_t>(i);
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) schema_error(path, "expected a number");
  return v.get<double>();
}

Vector state_vector(const json& v, std::size_t dim, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array");
  if (v.size() != dim) {
    schema_error(path, "has " + std::to_string(v.size()) + " entries, expected " +
                           std::to_string(dim));
  }
  Vector out;
  out.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const std::string at = path + "[" + std::to_string(k) + "]";
    const double x = number(v[k], at);
    if (x < 0.0) value_error(at, "must be nonnegative");
    out.push_back(x);
  }
  return out;
}

Matrix coefficient_matrix(const json& v, std::size_t d, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array of rows");
  if (v.size() != d) {
    schema_error(path, "has " + std::to_string(v.size()) + " rows, expected " + std::to_string(d));
  }
  std::vector<double> entries;
  entries.reserve(d * d);
  for (std::size_t p = 0; p < d; ++p) {
    const std::string row_path = path + "[" + std::to_string(p) + "]";
    const json& row = v[p];
    if (!row.is_array()) schema_error(row_path, "expected an array");
    if (row.size() != d) {
      schema_error(row_path,
                   "has " + std::to_string(row.size()) + " columns, expected " + std::to_string(d));
    }
    for (std::size_t q = 0; q < d; ++q) {
      const std::string at = row_path + "[" + std::to_string(q) + "]";
      const double a = number(row[q], at);
      if (a < 0.0 || a > 1.0) value_error(at, "coefficient outside [0,1]");
      entries.push_back(a);
    }
  }
  return Matrix(d, d, std::move(entries));
}

}  // namespace

EconomyNetwork parse_network(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) schema_error("<document>", "expected an object");
  allow_only(doc, {"n", "d", "edges", "demand", "x0", "label"}, "");

  const std::size_t n = positive_integer(require_field(doc, "n", ""), "n");
  const std::size_t d = positive_integer(require_field(doc, "d", ""), "d");

  const json& edges_json = require_field(doc, "edges", "");
  if (!edges_json.is_array()) schema_error("edges", "expected an array");
  std::vector<TradeEdge> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < edges_json.size(); ++k) {
    const std::string path = "edges[" + std::to_string(k) + "]";
    const json& e = edges_json[k];
    if (!e.is_object()) schema_error(path, "expected an object");
    allow_only(e, {"from", "to", "w", "A"}, path);
    const std::size_t from = positive_integer(require_field(e, "from", path), path + ".from");
    const std::size_t to = positive_integer(require_field(e, "to", path), path + ".to");
    if (from > n) value_error(path + ".from", "agent " + std::to_string(from) + " > n");
    if (to > n) value_error(path + ".to", "agent " + std::to_string(to) + " > n");
    const std::string label = path + " (from " + std::to_string(from) + " to " + std::to_string(to) + ")";
    if (!seen.emplace(from, to).second) value_error(label, "duplicate edge");
    const double w = number(require_field(e, "w", path), path + ".w");
    if (w < 0.0 || w > 1.0) value_error(label + ".w", "weight outside [0,1]");
    Matrix a = coefficient_matrix(require_field(e, "A", path), d, label + ".A");
    edges.push_back({from - 1, to - 1, w, std::move(a)});
  }

  std::optional<Vector> demand;
  if (auto it = doc.find("demand"); it != doc.end()) demand = state_vector(*it, n * d, "demand");
  std::optional<Vector> x0;
  if (auto it = doc.find("x0"); it != doc.end()) x0 = state_vector(*it, n * d, "x0");
  std::vector<std::string> labels;
  if (auto it = doc.find("label"); it != doc.end()) {
    if (!it->is_array() || it->size() != n) schema_error("label", "expected n strings");
    for (std::size_t k = 0; k < n; ++k) {
      if (!(*it)[k].is_string()) schema_error("label[" + std::to_string(k) + "]", "expected a string");
      labels.push_back((*it)[k].get<std::string>());
    }
  }
  return EconomyNetwork(n, d, std::move(edges), std::move(demand), std::move(x0), std::move(labels));
}

std::string serialize_network(const EconomyNetwork& net) {
  std::ostringstream os;
  JsonWriter w(os);
  w.begin_object();
  w.key("n").value(net.agents());
  w.key("d").value(net.industries());
  if (!net.labels().empty()) {
    w.key("label").begin_array();
    for (const auto& l : net.labels()) w.value(l);
    w.end_array();
  }
  w.key("edges").begin_array();
  for (const auto& e : net.edges()) {
    w.begin_object();
    w.key("from").value(e.importer + 1);
    w.key("to").value(e.supplier + 1);
    w.key("w").value(e.weight);
    w.key("A").begin_array();
    for (std::size_t p = 0; p < net.industries(); ++p) w.inline_array(e.coefficients.row(p));
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.key("demand").inline_array(net.demand());
  if (net.has_explicit_initial_state()) w.key("x0").inline_array(net.initial_state());
  w.end_object();
  return os.str();
}

EconomyNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_network(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace ionet
