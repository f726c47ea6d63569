#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fracgrid {

/// Dense nx-by-ny field stored row-major: row l (0..ny-1) holds cells j = 0..nx-1.
/// Cell (j, l) corresponds to u_{j,l}. The outer ring is the zero-Dirichlet
/// boundary; the solver never writes it.
class Grid2D {
public:
  Grid2D() = default;
  /// Zero-filled grid. Throws ConfigError if either dimension is zero.
  Grid2D(std::size_t nx, std::size_t ny, double dx = 1.0);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t cell_count() const noexcept { return data_.size(); }
  double dx() const noexcept { return dx_; }

  double& operator()(std::size_t j, std::size_t l) noexcept { return data_[l * nx_ + j]; }
  double operator()(std::size_t j, std::size_t l) const noexcept { return data_[l * nx_ + j]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  bool is_boundary(std::size_t j, std::size_t l) const noexcept {
    return j == 0 || l == 0 || j + 1 == nx_ || l + 1 == ny_;
  }
  bool same_shape(const Grid2D& other) const noexcept {
    return nx_ == other.nx_ && ny_ == other.ny_;
  }

  /// Sum over all cells.
  double total() const noexcept;
  /// Largest |u| over all cells (NaN propagates).
  double max_abs() const noexcept;
  bool all_finite() const noexcept;

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

private:
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  double dx_ = 1.0;
  std::vector<double> data_;
};

/// Un-scaled 5-point stencil of a grid at one time step. Boundary entries are 0.
using DeltaField = Grid2D;

/// delta_{j,l} = u_{j+1,l} + u_{j-1,l} - 4 u_{j,l} + u_{j,l+1} + u_{j,l-1} on
/// interior cells, 0 on the boundary ring. The 1/dx^2 factor is left to the
/// caller. Throws ConfigError when the grid is smaller than 3x3.
DeltaField laplacian_field(const Grid2D& grid);

/// Copy of row l (length nx). Throws std::out_of_range for l >= ny.
std::vector<double> slice_profile(const Grid2D& grid, std::size_t row);

/// Bytes needed to keep `entries` stencil fields of an nx-by-ny grid.
std::uint64_t history_bytes(std::size_t nx, std::size_t ny, std::size_t entries) noexcept;

/// Append-only store of per-step stencil fields delta^0, delta^1, ...
///
/// Storage for all `capacity` entries is reserved up front so appending never
/// relocates entries already handed out to readers.
class HistoryBuffer {
public:
  /// Throws ResourceError if capacity fields of the given shape exceed
  /// byte_cap bytes.
  HistoryBuffer(std::size_t nx, std::size_t ny, std::size_t capacity,
                std::uint64_t byte_cap = kDefaultByteCap);

  static constexpr std::uint64_t kDefaultByteCap = std::uint64_t{4} << 30;

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Entry k (delta at time step k). Throws std::out_of_range.
  const DeltaField& at(std::size_t k) const;
  const DeltaField& operator[](std::size_t k) const noexcept { return entries_[k]; }
  const DeltaField& back() const noexcept { return entries_.back(); }

  /// Throws ResourceError when full and ConfigError on a shape mismatch.
  void push(DeltaField field);

private:
  std::size_t nx_;
  std::size_t ny_;
  std::size_t capacity_;
  std::vector<DeltaField> entries_;
};

/// Free-function spelling of HistoryBuffer::push.
inline void push_history(HistoryBuffer& buffer, DeltaField field) { buffer.push(std::move(field)); }

}  // namespace fracgrid
