#include "rfed/harness/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rfed/core/errors.hpp"

namespace rfed {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& s, const std::filesystem::path& path) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError(path.string() + ": not a number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific);
  return std::string(buf, ptr);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  auto write_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
  if (!out) throw IoError("failed writing " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + ": empty file");
  table.header = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    table.rows.push_back(split_line(line));
    if (table.rows.back().size() != table.header.size()) {
      throw FormatError(path.string() + ": row width differs from header");
    }
  }
  return table;
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& trace) {
  CsvTable table;
  std::istringstream header(kTraceHeader);
  for (std::string col; std::getline(header, col, ',');) table.header.push_back(col);
  table.rows.reserve(trace.size());
  for (const TraceRecord& r : trace) {
    table.rows.push_back({std::to_string(r.t), format_double(r.F), format_double(r.excess),
                          format_double(r.grad_norm), format_double(r.alpha), std::to_string(r.B),
                          format_double(r.elapsed_s)});
  }
  write_csv(path, table);
}

std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  std::string header;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    header += (i ? "," : "") + table.header[i];
  }
  if (header != kTraceHeader) throw FormatError(path.string() + ": unexpected trace header");
  std::vector<TraceRecord> trace;
  for (const auto& row : table.rows) {
    TraceRecord r;
    r.t = static_cast<long>(parse_double(row[0], path));
    r.F = parse_double(row[1], path);
    r.excess = parse_double(row[2], path);
    r.grad_norm = parse_double(row[3], path);
    r.alpha = parse_double(row[4], path);
    r.B = static_cast<Index>(parse_double(row[5], path));
    r.elapsed_s = parse_double(row[6], path);
    trace.push_back(r);
  }
  return trace;
}

}  // namespace rfed
