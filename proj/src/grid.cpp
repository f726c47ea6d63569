#include "fracgrid/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fracgrid/errors.hpp"

namespace fracgrid {

Grid2D::Grid2D(std::size_t nx, std::size_t ny, double dx) : nx_(nx), ny_(ny), dx_(dx) {
  if (nx == 0 || ny == 0) throw ConfigError("grid dimensions must be positive", "grid");
  data_.assign(nx * ny, 0.0);
}

double Grid2D::total() const noexcept {
  double sum = 0.0;
  for (double v : data_) sum += v;
  return sum;
}

double Grid2D::max_abs() const noexcept {
  double best = 0.0;
  for (double v : data_) {
    if (std::isnan(v)) return v;
    best = std::max(best, std::abs(v));
  }
  return best;
}

bool Grid2D::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

DeltaField laplacian_field(const Grid2D& grid) {
  const std::size_t nx = grid.nx();
  const std::size_t ny = grid.ny();
  if (nx < 3 || ny < 3) {
    throw ConfigError("stencil needs at least a 3x3 grid, got " + std::to_string(nx) + "x" +
                          std::to_string(ny),
                      "grid");
  }
  DeltaField delta(nx, ny, grid.dx());
  const auto u = grid.data();
  auto out = delta.data();
  for (std::size_t l = 1; l + 1 < ny; ++l) {
    const std::size_t row = l * nx;
    for (std::size_t j = 1; j + 1 < nx; ++j) {
      const std::size_t c = row + j;
      out[c] = u[c + 1] + u[c - 1] - 4.0 * u[c] + u[c + nx] + u[c - nx];
    }
  }
  return delta;
}

std::vector<double> slice_profile(const Grid2D& grid, std::size_t row) {
  if (row >= grid.ny()) {
    throw std::out_of_range("profile row " + std::to_string(row) + " outside grid with ny=" +
                            std::to_string(grid.ny()));
  }
  const auto data = grid.data();
  const auto first = data.begin() + static_cast<std::ptrdiff_t>(row * grid.nx());
  return {first, first + static_cast<std::ptrdiff_t>(grid.nx())};
}

std::uint64_t history_bytes(std::size_t nx, std::size_t ny, std::size_t entries) noexcept {
  const long double bytes = static_cast<long double>(nx) * ny * entries * sizeof(double);
  if (bytes >= 1.8e19L) return UINT64_MAX;
  return static_cast<std::uint64_t>(bytes);
}

HistoryBuffer::HistoryBuffer(std::size_t nx, std::size_t ny, std::size_t capacity,
                             std::uint64_t byte_cap)
    : nx_(nx), ny_(ny), capacity_(capacity) {
  const std::uint64_t need = history_bytes(nx, ny, capacity);
  if (need > byte_cap) {
    throw ResourceError("history of " + std::to_string(capacity) + " steps on a " +
                        std::to_string(nx) + "x" + std::to_string(ny) + " grid needs " +
                        std::to_string(need) + " bytes, above the cap of " +
                        std::to_string(byte_cap));
  }
  entries_.reserve(capacity);
}

const DeltaField& HistoryBuffer::at(std::size_t k) const {
  if (k >= entries_.size()) {
    throw std::out_of_range("history entry " + std::to_string(k) + " not recorded (size " +
                            std::to_string(entries_.size()) + ")");
  }
  return entries_[k];
}

void HistoryBuffer::push(DeltaField field) {
  if (entries_.size() >= capacity_) {
    throw ResourceError("history buffer full at capacity " + std::to_string(capacity_));
  }
  if (field.nx() != nx_ || field.ny() != ny_) {
    throw ConfigError("history field shape does not match buffer", "grid");
  }
  entries_.push_back(std::move(field));
}

}  // namespace fracgrid
