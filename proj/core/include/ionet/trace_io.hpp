#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "ionet/dynamics.hpp"

namespace ionet {

/// Column name of state entry (agent, industry), 1-based: "x_<agent>_<industry>".
std::string state_column_name(Agent agent, Industry industry);

/// CSV trace: header "k,x_1_1,...,x_n_d", one row per recorded step, values
/// with 17 significant digits.
void write_trace(std::ostream& os, const SimulationTrace& trace, std::size_t agents,
                 std::size_t industries);

struct TraceTable {
  std::vector<std::string> columns;  // without "k"
  std::vector<long long> steps;
  std::vector<Vector> rows;
};

/// Parses a trace written by write_trace. Raises ParseError on malformed rows,
/// SchemaError on a bad header or non-increasing steps.
TraceTable read_trace(std::istream& is);

/// Per-industry series of one agent (1-based), as CSV "k,x_i_1,...,x_i_d".
/// Raises ValueError if the agent has no columns in the trace.
void write_agent_series(std::ostream& os, const TraceTable& table, Agent agent_1based);

}  // namespace ionet
