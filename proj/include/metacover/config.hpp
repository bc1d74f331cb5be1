#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "metacover/cover.hpp"
#include "metacover/error.hpp"
#include "metacover/slope.hpp"

namespace metacover {

/// Schema or syntax violation; the message starts with the field path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Line-oriented config: `key = value` lines and `[name]` blocks of
/// whitespace- or comma-separated rows ending at a blank line or the next
/// header. `#` starts a comment.
struct ConfigFile {
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };
  struct Block {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;
  };
  std::string source;
  std::map<std::string, Entry> keys;
  std::map<std::string, Block> blocks;
};

ConfigFile parse_config(const std::string& text, const std::string& source);
std::string read_file(const std::string& path);

std::int64_t parse_int(const std::string& text, const std::string& field);
Rational parse_rational(const std::string& text, const std::string& field);
/// Comma-separated integers, e.g. "1,0".
std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& field);

struct TorusConfig {
  TorusSpec spec;
  CocycleSpec cocycle;
  std::int64_t q = 0;  // 0 in lattice mode
};

/// Keys: mode (local|lattice), n, m, q (local), level (lattice), cocycle
/// (split|symbol|bilinear). Blocks: M (local), J (lattice), C, U.
TorusConfig parse_torus_config(const ConfigFile& cfg);

/// Keys: rank_t, rank_s. Blocks: res (rank_s rows), roots (root | coroot),
/// simple (root index | restricted root), restricted (root | multiplicity).
RootDatum parse_root_datum(const ConfigFile& cfg);
/// Rows "psi entries | theta slope entries"; rationals written p/q.
std::vector<WeightChar> parse_weight_batch(const std::string& text, const std::string& source, const RootDatum& datum);

}  // namespace metacover
