#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "incseq/types.hpp"
#include "incseq/version.hpp"

namespace incseq {

// A rectangular result table plus the run metadata appended to every file.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct RunMeta {
  uint64_t seed = 0;
  double elapsed_ms = 0.0;
};

// Shortest representation that round-trips.
inline std::string fmt_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string fmt_long(long v) { return std::to_string(v); }

// Header row, data rows, then one trailing metadata comment line carrying
// version, seed and wall-clock.
inline void write_csv(std::ostream& out, const Table& table, const RunMeta& meta) {
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << row[c];
    }
    out << '\n';
  }
  out << "# version=" << kVersion << " seed=" << meta.seed << " elapsed_ms=" << fmt_double(meta.elapsed_ms)
      << '\n';
}

inline void write_json(std::ostream& out, const Table& table, const RunMeta& meta) {
  nlohmann::json doc;
  doc["columns"] = table.columns;
  doc["rows"] = table.rows;
  doc["meta"] = {{"version", kVersion}, {"seed", meta.seed}, {"elapsed_ms", meta.elapsed_ms}};
  out << doc.dump(2) << '\n';
}

inline void write_table_file(const std::string& path, const Table& table, const RunMeta& meta, bool json) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  if (json)
    write_json(out, table, meta);
  else
    write_csv(out, table, meta);
}

}  // namespace incseq
