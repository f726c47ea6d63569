#include "fracgrid/psi_table.hpp"

#include <cmath>
#include <new>
#include <stdexcept>
#include <string>

#include "fracgrid/errors.hpp"

namespace fracgrid {

namespace {

void check_gamma(double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0 || gamma >= 2.0) {
    throw ConfigError("gamma must be finite and in (0, 2), got " + std::to_string(gamma),
                      "gamma");
  }
}

// One step of the recursion; shared by psi() and the table so both produce
// bit-identical values.
inline double next_psi(double previous, double gamma, std::size_t m) {
  const double md = static_cast<double>(m);
  return -previous * (2.0 - gamma - md) / md;
}

}  // namespace

double psi(double gamma, std::size_t m) {
  check_gamma(gamma);
  double value = 1.0;
  for (std::size_t j = 1; j <= m; ++j) value = next_psi(value, gamma, j);
  return value;
}

PsiTable::PsiTable(double gamma, std::size_t n_steps) : gamma_(gamma) {
  check_gamma(gamma);
  try {
    values_.resize(n_steps + 1);
  } catch (const std::bad_alloc&) {
    throw ResourceError("cannot allocate psi table for " + std::to_string(n_steps) + " steps");
  } catch (const std::length_error&) {
    throw ResourceError("cannot allocate psi table for " + std::to_string(n_steps) + " steps");
  }
  values_[0] = 1.0;
  for (std::size_t m = 1; m <= n_steps; ++m) values_[m] = next_psi(values_[m - 1], gamma, m);
}

double PsiTable::at(std::size_t m) const {
  if (m >= values_.size()) {
    throw std::out_of_range("psi index " + std::to_string(m) + " beyond table capacity " +
                            std::to_string(capacity()));
  }
  return values_[m];
}

double PsiTable::partial_sum(std::size_t upper) const {
  if (upper > capacity()) {
    throw std::out_of_range("partial sum bound " + std::to_string(upper) +
                            " beyond table capacity " + std::to_string(capacity()));
  }
  double sum = 0.0;
  for (std::size_t m = 0; m <= upper; ++m) sum += values_[m];
  return sum;
}

}  // namespace fracgrid
