#include "pairwise/grid.hpp"

#include <stdexcept>
#include <string>

namespace pairwise {

SpectralGrid make_grid(double pump_freq, double half_span, int n_points) {
  if (pump_freq <= 0.0) throw std::invalid_argument("make_grid: pump_freq must be positive");
  if (half_span <= 0.0) throw std::invalid_argument("make_grid: half_span must be positive");
  if (half_span >= 0.5 * pump_freq)
    throw std::invalid_argument("make_grid: half_span must be below pump_freq/2 (all mode frequencies positive)");
  if (n_points < 8) throw std::invalid_argument("make_grid: n_points must be >= 8, got " + std::to_string(n_points));
  if (n_points % 2 != 0) throw std::invalid_argument("make_grid: n_points must be even, got " + std::to_string(n_points));
  return SpectralGrid{pump_freq, half_span, n_points};
}

}  // namespace pairwise
