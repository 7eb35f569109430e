#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rfed/engine/config.hpp"

namespace rfed {

// Shortest round-trip scientific form ("nan", "inf", "-inf" for non-finite values).
std::string format_double(double value);

inline constexpr const char* kTraceHeader = "t,F,excess,grad_norm,alpha,B,elapsed_s";

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& trace);
std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path);

// Header plus rows of already formatted cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace rfed
