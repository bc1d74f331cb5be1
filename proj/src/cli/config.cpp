#include "metacover/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace metacover {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  for (char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      flush();
    } else if (ch == '|') {
      flush();
      out.emplace_back("|");
    } else {
      cur.push_back(ch);
    }
  }
  flush();
  return out;
}

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

[[noreturn]] void fail(const ConfigFile& cfg, const std::string& field, const std::string& msg) {
  throw ConfigError(cfg.source + ": " + field + ": " + msg);
}

void allow_only(const ConfigFile& cfg, const std::set<std::string>& keys, const std::set<std::string>& blocks) {
  for (const auto& [k, e] : cfg.keys) {
    if (!keys.count(k)) fail(cfg, k, "unknown key (line " + std::to_string(e.line) + ")");
  }
  for (const auto& [k, b] : cfg.blocks) {
    if (!blocks.count(k)) fail(cfg, k, "unknown block");
  }
}

const ConfigFile::Entry& need_key(const ConfigFile& cfg, const std::string& key) {
  auto it = cfg.keys.find(key);
  if (it == cfg.keys.end()) fail(cfg, key, "required key is missing");
  return it->second;
}

std::int64_t key_int(const ConfigFile& cfg, const std::string& key) {
  try {
    return parse_int(need_key(cfg, key).value, key);
  } catch (const ConfigError& e) {
    throw ConfigError(cfg.source + ": " + e.what());
  }
}

IntMatrix block_matrix(const ConfigFile& cfg, const std::string& name, std::size_t rows, std::size_t cols) {
  auto it = cfg.blocks.find(name);
  if (it == cfg.blocks.end()) fail(cfg, name, "required block is missing");
  const auto& b = it->second;
  if (b.rows.size() != rows) fail(cfg, name, "expected " + std::to_string(rows) + " rows, got " + std::to_string(b.rows.size()));
  IntMatrix out;
  for (std::size_t i = 0; i < rows; ++i) {
    if (b.rows[i].size() != cols) {
      fail(cfg, at(name, i), "expected " + std::to_string(cols) + " entries, got " + std::to_string(b.rows[i].size()));
    }
    std::vector<std::int64_t> row;
    for (std::size_t j = 0; j < cols; ++j) {
      try {
        row.push_back(parse_int(b.rows[i][j], at(at(name, i), j)));
      } catch (const ConfigError& e) {
        throw ConfigError(cfg.source + ": " + e.what());
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

// Splits a row at '|' into exactly `parts` groups.
std::vector<std::vector<std::string>> split_bars(const ConfigFile& cfg, const std::string& field,
                                                 const std::vector<std::string>& row, std::size_t parts) {
  std::vector<std::vector<std::string>> out(1);
  for (const auto& t : row) {
    if (t == "|") {
      out.emplace_back();
    } else {
      out.back().push_back(t);
    }
  }
  if (out.size() != parts) fail(cfg, field, "expected " + std::to_string(parts) + " groups separated by '|'");
  return out;
}

std::vector<std::int64_t> ints(const ConfigFile& cfg, const std::string& field, const std::vector<std::string>& toks,
                               std::size_t n) {
  if (toks.size() != n) fail(cfg, field, "expected " + std::to_string(n) + " entries, got " + std::to_string(toks.size()));
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    try {
      out.push_back(parse_int(toks[i], at(field, i)));
    } catch (const ConfigError& e) {
      throw ConfigError(cfg.source + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

ConfigFile parse_config(const std::string& text, const std::string& source) {
  ConfigFile cfg;
  cfg.source = source;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  ConfigFile::Block* open = nullptr;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) {
      if (hash == std::string::npos) open = nullptr;
      continue;
    }
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(source + ":" + std::to_string(line) + ": malformed block header");
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (name.empty()) throw ConfigError(source + ":" + std::to_string(line) + ": empty block name");
      if (cfg.blocks.count(name)) throw ConfigError(source + ": " + name + ": duplicate block");
      open = &cfg.blocks[name];
      continue;
    }
    const auto eq = s.find('=');
    if (eq != std::string::npos) {
      open = nullptr;
      const std::string key = trim(s.substr(0, eq));
      const std::string value = trim(s.substr(eq + 1));
      if (key.empty()) throw ConfigError(source + ":" + std::to_string(line) + ": missing key before '='");
      if (cfg.keys.count(key)) throw ConfigError(source + ": " + key + ": duplicate key");
      cfg.keys[key] = {value, line};
      continue;
    }
    if (!open) throw ConfigError(source + ":" + std::to_string(line) + ": expected 'key = value' or a block header");
    open->rows.push_back(tokens(s));
    open->lines.push_back(line);
  }
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::int64_t parse_int(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    throw ConfigError(field + ": expected an integer, got '" + t + "'");
  }
  if (pos != t.size()) throw ConfigError(field + ": expected an integer, got '" + t + "'");
  return v;
}

Rational parse_rational(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  const std::string num = slash == std::string::npos ? t : t.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  mpz_class p;
  mpz_class q;
  auto ok = [](const std::string& s) {
    if (s.empty()) return false;
    const std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  if (!ok(num) || !ok(den) || p.set_str(num[0] == '+' ? num.substr(1) : num, 10) != 0 ||
      q.set_str(den[0] == '+' ? den.substr(1) : den, 10) != 0) {
    throw ConfigError(field + ": expected a rational p/q, got '" + t + "'");
  }
  if (q == 0) throw ConfigError(field + ": zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& field) {
  std::vector<std::int64_t> out;
  std::string cur;
  std::size_t i = 0;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) out.push_back(parse_int(cur, at(field, i++)));
  if (out.empty()) throw ConfigError(field + ": expected a comma-separated list of integers");
  return out;
}

TorusConfig parse_torus_config(const ConfigFile& cfg) {
  allow_only(cfg, {"mode", "n", "m", "q", "level", "cocycle"}, {"M", "J", "C", "U"});
  const std::string mode = need_key(cfg, "mode").value;
  const std::int64_t n = key_int(cfg, "n");
  const std::int64_t m = key_int(cfg, "m");
  if (n < 1 || n > 4) fail(cfg, "n", "rank must be between 1 and 4");
  if (m < 1) fail(cfg, "m", "must be positive");
  const auto un = static_cast<std::size_t>(n);
  TorusConfig out;
  if (mode == "local") {
    if (cfg.keys.count("level")) fail(cfg, "level", "only valid in lattice mode");
    out.q = key_int(cfg, "q");
    const LocalModel model(out.q, m);
    out.spec = TorusSpec::local_mode(model, un, block_matrix(cfg, "M", un, un));
  } else if (mode == "lattice") {
    if (cfg.keys.count("q")) fail(cfg, "q", "only valid in local mode");
    const std::int64_t level = cfg.keys.count("level") ? key_int(cfg, "level") : 0;
    out.spec = TorusSpec::lattice_mode(un, m, block_matrix(cfg, "J", un, un), level);
  } else {
    fail(cfg, "mode", "expected 'local' or 'lattice', got '" + mode + "'");
  }
  const std::string kind = cfg.keys.count("cocycle") ? cfg.keys.at("cocycle").value : "split";
  if (kind == "split") {
    out.cocycle = CocycleSpec::split();
  } else if (kind == "symbol") {
    if (mode != "local") fail(cfg, "cocycle", "symbol cocycles need local mode");
    out.cocycle = CocycleSpec::symbol(block_matrix(cfg, "C", un, un));
  } else if (kind == "bilinear") {
    out.cocycle = CocycleSpec::bilinear(block_matrix(cfg, "U", un * (mode == "local" ? 2 : 1), un * (mode == "local" ? 2 : 1)));
  } else {
    fail(cfg, "cocycle", "expected split, symbol or bilinear, got '" + kind + "'");
  }
  return out;
}

RootDatum parse_root_datum(const ConfigFile& cfg) {
  allow_only(cfg, {"rank_t", "rank_s"}, {"res", "roots", "simple", "restricted"});
  RootDatum d;
  const auto rt = key_int(cfg, "rank_t");
  const auto rs = key_int(cfg, "rank_s");
  if (rt < 1 || rs < 1) fail(cfg, "rank_t", "ranks must be positive");
  d.rank_t = static_cast<std::size_t>(rt);
  d.rank_s = static_cast<std::size_t>(rs);
  d.res = block_matrix(cfg, "res", d.rank_s, d.rank_t);
  auto rows = [&](const std::string& name) -> const ConfigFile::Block& {
    auto it = cfg.blocks.find(name);
    if (it == cfg.blocks.end()) fail(cfg, name, "required block is missing");
    return it->second;
  };
  const auto& roots = rows("roots");
  for (std::size_t i = 0; i < roots.rows.size(); ++i) {
    const auto f = at("roots", i);
    const auto g = split_bars(cfg, f, roots.rows[i], 2);
    d.positive_roots.push_back({ints(cfg, f + ".root", g[0], d.rank_t), ints(cfg, f + ".coroot", g[1], d.rank_t)});
  }
  const auto& simple = rows("simple");
  for (std::size_t i = 0; i < simple.rows.size(); ++i) {
    const auto f = at("simple", i);
    const auto g = split_bars(cfg, f, simple.rows[i], 2);
    const auto idx = ints(cfg, f + ".index", g[0], 1)[0];
    if (idx < 0) fail(cfg, f + ".index", "must be nonnegative");
    d.simple.push_back({static_cast<std::size_t>(idx), ints(cfg, f + ".restricted", g[1], d.rank_s)});
  }
  const auto& restricted = rows("restricted");
  for (std::size_t i = 0; i < restricted.rows.size(); ++i) {
    const auto f = at("restricted", i);
    const auto g = split_bars(cfg, f, restricted.rows[i], 2);
    d.restricted_roots.push_back({ints(cfg, f + ".root", g[0], d.rank_s), ints(cfg, f + ".multiplicity", g[1], 1)[0]});
  }
  try {
    validate_datum(d);
  } catch (const PreconditionError& e) {
    throw ConfigError(cfg.source + ": " + e.what());
  }
  return d;
}

std::vector<WeightChar> parse_weight_batch(const std::string& text, const std::string& source, const RootDatum& datum) {
  ConfigFile cfg;
  cfg.source = source;
  std::vector<WeightChar> out;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto f = at("batch", out.size());
    const auto g = split_bars(cfg, f, tokens(s), 2);
    WeightChar w;
    if (g[0].size() != datum.rank_t) fail(cfg, f + ".psi", "expected " + std::to_string(datum.rank_t) + " entries");
    if (g[1].size() != datum.rank_s) fail(cfg, f + ".theta", "expected " + std::to_string(datum.rank_s) + " entries");
    try {
      for (std::size_t i = 0; i < g[0].size(); ++i) w.psi.push_back(parse_rational(g[0][i], at(f + ".psi", i)));
      for (std::size_t i = 0; i < g[1].size(); ++i) w.theta_slope.push_back(parse_rational(g[1][i], at(f + ".theta", i)));
    } catch (const ConfigError& e) {
      throw ConfigError(source + ": " + e.what());
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace metacover
