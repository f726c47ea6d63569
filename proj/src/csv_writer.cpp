#include "fracgrid/csv_writer.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fracgrid/errors.hpp"
#include "fracgrid/format.hpp"

namespace fracgrid {

std::string format_grid_csv(const Grid2D& grid) {
  std::string out;
  for (std::size_t l = 0; l < grid.ny(); ++l) {
    for (std::size_t j = 0; j < grid.nx(); ++j) {
      if (j > 0) out += ',';
      out += format_double(grid(j, l));
    }
    out += '\n';
  }
  return out;
}

std::string format_profile_csv(std::span<const double> profile) {
  std::string out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(profile[i]);
    out += '\n';
  }
  return out;
}

std::string format_series_csv(const std::string& header, std::span<const double> x,
                              std::span<const double> y) {
  std::string out = header + '\n';
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    out += format_double(x[i]) + ',' + format_double(y[i]) + '\n';
  }
  return out;
}

std::string format_benchmark_csv(std::vector<BenchmarkRecord> records) {
  if (records.empty()) throw ConfigError("no benchmark records to write", "records");
  std::stable_sort(records.begin(), records.end(), record_less);
  std::string out = std::string(kBenchmarkHeader) + '\n';
  for (const auto& r : records) {
    out += r.strategy + ',' + format_double(r.param) + ',' + format_double(r.gamma) + ',' +
           format_double(r.elapsed_s) + ',' + format_double(r.err_l2_pct) + ',' +
           format_double(r.err_linf_pct) + '\n';
  }
  return out;
}

std::string format_schedule_csv(const MemorySchedule& schedule) {
  std::string out = "m,w\n";
  for (const auto& e : schedule) out += std::to_string(e.offset) + ',' + std::to_string(e.weight) + '\n';
  return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing", path);
  file.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'", path);
}

void write_grid_csv(const Grid2D& grid, const std::string& path) {
  write_text_file(path, format_grid_csv(grid));
}

void write_profile_csv(std::span<const double> profile, const std::string& path) {
  write_text_file(path, format_profile_csv(profile));
}

void write_benchmark_csv(const std::vector<BenchmarkRecord>& records, const std::string& path) {
  write_text_file(path, format_benchmark_csv(records));
}

Grid2D read_grid_csv(const std::string& path, double dx) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open '" + path + "'", path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(file, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0' || errno == ERANGE) {
        throw ConfigError("bad number '" + cell + "' in " + path + " row " +
                              std::to_string(rows.size()),
                          "initial");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ConfigError("ragged row " + std::to_string(rows.size()) + " in " + path, "initial");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("empty grid file " + path, "initial");
  Grid2D grid(rows.front().size(), rows.size(), dx);
  for (std::size_t l = 0; l < rows.size(); ++l) {
    for (std::size_t j = 0; j < rows[l].size(); ++j) grid(j, l) = rows[l][j];
  }
  return grid;
}

}  // namespace fracgrid
