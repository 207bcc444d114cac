#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace nlwave {

/// Column-oriented table with preformatted cells; the same table backs the
/// CSV and JSON writers so both formats carry identical data.
struct OutputTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Full-precision cell format: 12 significant digits, scientific.
std::string format_full(double x);
/// Shortest representation that parses back to the same double.
std::string format_shortest(double x);

/// CSV layout: '#'-prefixed metadata lines, then a header row, then data.
void write_csv(std::ostream& out, const Metadata& metadata, const OutputTable& table);
/// JSON mirror of the CSV: metadata envelope plus columns/rows arrays.
void write_json(std::ostream& out, const Metadata& metadata, const OutputTable& table);

/// Writes in the requested format ("csv" or "json"); throws std::runtime_error
/// naming the path on I/O failure.
void write_table_file(const std::filesystem::path& path, const std::string& format,
                      const Metadata& metadata, const OutputTable& table);

/// "out.csv" + "_trace" -> "out_trace.csv".
std::filesystem::path derived_path(const std::filesystem::path& path, const std::string& suffix);

/// Linear interpolant through a two-column (x, value) whitespace-separated
/// text file; zero outside the tabulated range.
std::function<double(double)> load_tabulated_function(const std::filesystem::path& path);

}  // namespace nlwave
