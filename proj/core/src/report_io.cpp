#include "nlwave/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nlwave {

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11E", x);
  return buf;
}

std::string format_shortest(double x) {
  char buf[40];
  const auto result = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, result.ptr);
}

void write_csv(std::ostream& out, const Metadata& metadata, const OutputTable& table) {
  for (const auto& [key, value] : metadata) {
    out << "# " << key << " = " << value << "\n";
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out << ",";
    out << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ",";
      out << row[c];
    }
    out << "\n";
  }
}

void write_json(std::ostream& out, const Metadata& metadata, const OutputTable& table) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : metadata) config[key] = value;
  doc["config"] = std::move(config);
  doc["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json json_row = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      // numeric cells become JSON numbers, everything else stays a string
      char* end = nullptr;
      const double value = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() + cell.size() && !cell.empty()) {
        json_row.push_back(value);
      } else {
        json_row.push_back(cell);
      }
    }
    rows.push_back(std::move(json_row));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

void write_table_file(const std::filesystem::path& path, const std::string& format,
                      const Metadata& metadata, const OutputTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path.string() + "'");
  if (format == "json") {
    write_json(out, metadata, table);
  } else {
    write_csv(out, metadata, table);
  }
  out.flush();
  if (!out) throw std::runtime_error("failed while writing '" + path.string() + "'");
}

std::filesystem::path derived_path(const std::filesystem::path& path, const std::string& suffix) {
  std::filesystem::path out = path;
  const std::string ext = out.extension().string();
  out.replace_extension();
  out += suffix;
  out += ext;
  return out;
}

std::function<double(double)> load_tabulated_function(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table file '" + path.string() + "'");
  std::vector<double> xs, ys;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double x = 0.0, y = 0.0;
    if (row >> x >> y) {
      xs.push_back(x);
      ys.push_back(y);
    }
  }
  if (xs.size() < 2) {
    throw std::runtime_error("table file '" + path.string() + "' needs at least two rows");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw std::runtime_error("table file '" + path.string() +
                               "': x column must be strictly increasing");
    }
  }
  return [xs = std::move(xs), ys = std::move(ys)](double x) {
    if (x < xs.front() || x > xs.back()) return 0.0;
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return ys.front();
    if (it == xs.end()) return ys.back();
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const double frac = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
    return ys[hi - 1] + (ys[hi] - ys[hi - 1]) * frac;
  };
}

}  // namespace nlwave
