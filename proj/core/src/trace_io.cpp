#include "ionet/trace_io.hpp"

#include <charconv>
#include <sstream>

#include "ionet/error.hpp"
#include "ionet/text_format.hpp"

namespace ionet {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line_no) + ": bad number '" + s + "'");
}

long long parse_step(const std::string& s, std::size_t line_no) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line_no) + ": bad step index '" + s + "'");
  }
  return v;
}

}  // namespace

std::string state_column_name(Agent agent, Industry industry) {
  return "x_" + std::to_string(agent) + "_" + std::to_string(industry);
}

void write_trace(std::ostream& os, const SimulationTrace& trace, std::size_t agents,
                 std::size_t industries) {
  os << 'k';
  for (Agent i = 1; i <= agents; ++i)
    for (Industry p = 1; p <= industries; ++p) os << ',' << state_column_name(i, p);
  os << '\n';
  for (std::size_t r = 0; r < trace.states.size(); ++r) {
    os << trace.steps[r];
    for (double v : trace.states[r]) os << ',' << format_number(v);
    os << '\n';
  }
}

TraceTable read_trace(std::istream& is) {
  TraceTable table;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(is, line)) throw Error(ErrorCode::SchemaError, "empty trace");
  ++line_no;
  auto header = split_csv(line);
  if (header.size() < 2 || header.front() != "k") {
    throw Error(ErrorCode::SchemaError, "trace header must start with 'k' and list states");
  }
  table.columns.assign(header.begin() + 1, header.end());
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(header.size()) + " columns, got " +
                                             std::to_string(cells.size()));
    }
    const long long k = parse_step(cells[0], line_no);
    if (!table.steps.empty() && k <= table.steps.back()) {
      throw Error(ErrorCode::SchemaError,
                  "line " + std::to_string(line_no) + ": step indices must increase");
    }
    Vector row;
    row.reserve(cells.size() - 1);
    for (std::size_t c = 1; c < cells.size(); ++c) row.push_back(parse_double(cells[c], line_no));
    table.steps.push_back(k);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_agent_series(std::ostream& os, const TraceTable& table, Agent agent_1based) {
  const std::string prefix = "x_" + std::to_string(agent_1based) + "_";
  std::vector<std::size_t> picked;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (table.columns[c].rfind(prefix, 0) == 0) picked.push_back(c);
  }
  if (picked.empty()) {
    throw Error(ErrorCode::ValueError,
                "trace has no columns for agent " + std::to_string(agent_1based));
  }
  os << 'k';
  for (auto c : picked) os << ',' << table.columns[c];
  os << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << table.steps[r];
    for (auto c : picked) os << ',' << format_number(table.rows[r][c]);
    os << '\n';
  }
}

}  // namespace ionet
