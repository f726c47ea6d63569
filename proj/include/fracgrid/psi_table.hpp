#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracgrid {

/// Signed Grunwald-Letnikov weight psi(gamma, m) = (-1)^m * binom(1 - gamma, m),
/// evaluated through the recursion psi(m) = -psi(m - 1) * (2 - gamma - m) / m
/// starting from psi(0) = 1. No Gamma-function evaluation is involved.
///
/// Throws ConfigError unless gamma is finite and in (0, 2).
double psi(double gamma, std::size_t m);

/// Immutable table of psi(gamma, m) for m = 0..capacity().
class PsiTable {
public:
  /// Eagerly builds all n_steps + 1 entries. Throws ConfigError for a gamma
  /// outside (0, 2) and ResourceError if the storage cannot be allocated.
  PsiTable(double gamma, std::size_t n_steps);

  double gamma() const noexcept { return gamma_; }
  /// Largest index covered.
  std::size_t capacity() const noexcept { return values_.size() - 1; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t m) const noexcept { return values_[m]; }
  /// Bounds-checked access; throws std::out_of_range.
  double at(std::size_t m) const;

  std::span<const double> values() const noexcept { return values_; }

  /// Sum of entries 0..upper. Throws std::out_of_range if upper > capacity().
  double partial_sum(std::size_t upper) const;

private:
  double gamma_;
  std::vector<double> values_;
};

/// Free-function spelling of the constructor.
inline PsiTable build_table(double gamma, std::size_t n_steps) {
  return PsiTable(gamma, n_steps);
}

}  // namespace fracgrid
