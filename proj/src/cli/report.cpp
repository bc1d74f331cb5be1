#include "metacover/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "metacover/error.hpp"

namespace metacover {

bool Report::all_checks() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

bool operator==(const Report& a, const Report& b) {
  return a.subcommand == b.subcommand && a.input_digest == b.input_digest && a.columns == b.columns &&
         a.summary == b.summary && a.records == b.records && a.checks == b.checks && a.timing_ms == b.timing_ms;
}

std::string emit_machine(const Report& r) {
  std::ostringstream out;
  Json header{{"kind", "header"}, {"subcommand", r.subcommand}, {"input_digest", r.input_digest}, {"columns", r.columns}};
  out << header.dump() << '\n';
  if (!r.summary.empty()) {
    Json s{{"kind", "summary"}, {"values", r.summary}};
    out << s.dump() << '\n';
  }
  for (const auto& rec : r.records) {
    Json line{{"kind", "record"}, {"values", rec}};
    out << line.dump() << '\n';
  }
  Json checks = Json::object();
  for (const auto& [k, v] : r.checks) checks[k] = v;
  out << Json{{"kind", "checks"}, {"values", checks}}.dump() << '\n';
  if (r.timing_ms) out << Json{{"kind", "timing"}, {"ms", *r.timing_ms}}.dump() << '\n';
  return out.str();
}

Report parse_machine(const std::string& text) {
  Report r;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const std::exception& e) {
      throw Error(std::string("malformed report line: ") + e.what());
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "header") {
      r.subcommand = j.at("subcommand").get<std::string>();
      r.input_digest = j.at("input_digest").get<std::string>();
      r.columns = j.at("columns").get<std::vector<std::string>>();
      header = true;
    } else if (kind == "summary") {
      r.summary = j.at("values");
    } else if (kind == "record") {
      r.records.push_back(j.at("values"));
    } else if (kind == "checks") {
      for (const auto& [k, v] : j.at("values").items()) r.checks.emplace_back(k, v.get<bool>());
    } else if (kind == "timing") {
      r.timing_ms = j.at("ms").get<double>();
    } else {
      throw Error("unknown report line kind '" + kind + "'");
    }
  }
  if (!header) throw Error("report has no header line");
  return r;
}

namespace {

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

}  // namespace

std::string emit_table(const Report& r) {
  std::ostringstream out;
  out << r.subcommand << "  (input " << r.input_digest.substr(0, 12) << ")\n";
  std::size_t kw = 0;
  for (const auto& [k, v] : r.summary.items()) kw = std::max(kw, k.size());
  for (const auto& [k, v] : r.summary.items()) out << std::left << std::setw(static_cast<int>(kw)) << k << "  " << cell(v) << '\n';
  if (!r.columns.empty()) {
    if (!r.summary.empty()) out << '\n';
    std::vector<std::size_t> width;
    for (const auto& c : r.columns) width.push_back(c.size());
    std::vector<std::vector<std::string>> rows;
    for (const auto& rec : r.records) {
      std::vector<std::string> row;
      for (std::size_t i = 0; i < r.columns.size(); ++i) {
        row.push_back(rec.contains(r.columns[i]) ? cell(rec.at(r.columns[i])) : "-");
        width[i] = std::max(width[i], row.back().size());
      }
      rows.push_back(std::move(row));
    }
    auto print = [&](const std::vector<std::string>& row) {
      std::string s;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) s += "  ";
        s += row[i];
        if (i + 1 < row.size()) s += std::string(width[i] - row[i].size(), ' ');
      }
      out << s << '\n';
    };
    print(r.columns);
    for (const auto& row : rows) print(row);
  }
  if (!r.checks.empty()) {
    out << '\n';
    std::size_t cw = 0;
    for (const auto& [k, v] : r.checks) cw = std::max(cw, k.size());
    for (const auto& [k, v] : r.checks) out << std::left << std::setw(static_cast<int>(cw)) << k << "  " << (v ? "PASS" : "FAIL") << '\n';
  }
  if (r.timing_ms) out << "\ntime " << std::fixed << std::setprecision(1) << *r.timing_ms << " ms\n";
  return out.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("digest computation failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

}  // namespace metacover
