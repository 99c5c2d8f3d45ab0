#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ionet/economy.hpp"

namespace ionet {

/// Parses a network document (JSON). Agent indices in the document are
/// 1-based; "from" is the importing agent and "to" the supplying agent.
///
///   {"n": 2, "d": 1,
///    "edges": [{"from": 1, "to": 2, "w": 1, "A": [[1]]}, ...],
///    "demand": [...], "x0": [...], "label": ["...", ...]}
///
/// Raises ParseError for malformed text (with line and column), SchemaError
/// for missing, unknown or mis-shaped fields, ValueError for out-of-range
/// values. Messages name the offending field, e.g. `edges[2].A`.
EconomyNetwork parse_network(std::string_view text);

/// Inverse of parse_network; numbers use 17 significant digits.
std::string serialize_network(const EconomyNetwork& net);

/// Reads and parses a file. Raises IoError when it cannot be read.
EconomyNetwork load_network(const std::filesystem::path& path);

}  // namespace ionet
