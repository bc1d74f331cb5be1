#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace metacover {

using Json = nlohmann::ordered_json;

/// Result of one CLI run. Machine output is JSON Lines: a header line, an
/// optional summary line, one line per record, a checks line and, only when
/// requested, a timing line.
struct Report {
  std::string subcommand;
  std::string input_digest;
  std::vector<std::string> columns;
  Json summary = Json::object();
  std::vector<Json> records;
  std::vector<std::pair<std::string, bool>> checks;
  std::optional<double> timing_ms;

  bool all_checks() const;
  friend bool operator==(const Report& a, const Report& b);
};

std::string emit_machine(const Report& r);
std::string emit_table(const Report& r);
/// Inverse of emit_machine; throws Error on malformed input.
Report parse_machine(const std::string& text);

/// Hex SHA-256 digest.
std::string sha256_hex(const std::string& data);

}  // namespace metacover
