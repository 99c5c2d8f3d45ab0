#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ionet {

/// 17 significant digits: enough for any double to read back bit-exact.
std::string format_number(double v);

/// Minimal streaming JSON emitter with fixed formatting, used for
/// machine-readable output. Produces byte-identical text for identical calls.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os, int indent = 2) : os_(os), indent_(indent) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(long long v);
  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(std::size_t v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  /// Numeric array on a single line.
  JsonWriter& inline_array(std::span<const double> vs);
  JsonWriter& inline_array(std::span<const std::size_t> vs);

 private:
  void before_value();
  void write_string(std::string_view v);
  void newline();

  struct Level {
    bool is_object;
    bool empty = true;
  };
  std::ostream& os_;
  int indent_;
  std::vector<Level> stack_;
  bool after_key_ = false;
};

}  // namespace ionet
