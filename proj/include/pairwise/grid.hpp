#pragma once

#include <cstddef>

namespace pairwise {

// Uniform angular-frequency grid, symmetric about half the pump frequency.
// Modes are stored as detunings d_j = (j - n/2 + 1/2) * dw, so every mode at
// +d has an exact twin at -d and twin(j) = n-1-j holds without rounding.
// The upper half (d > 0) is the signal band, the lower half the idler band.
struct SpectralGrid {
  double pump_freq = 0.0;  // rad/s
  double half_span = 0.0;  // rad/s
  int n_points = 0;        // even, >= 8

  double spacing() const { return 2.0 * half_span / n_points; }
  double detuning(int j) const { return (j - 0.5 * n_points + 0.5) * spacing(); }
  double frequency(int j) const { return 0.5 * pump_freq + detuning(j); }
  int twin(int j) const { return n_points - 1 - j; }
  bool is_signal(int j) const { return 2 * j >= n_points; }
  int signal_begin() const { return n_points / 2; }
  std::size_t size() const { return static_cast<std::size_t>(n_points); }

  bool operator==(const SpectralGrid&) const = default;
};

SpectralGrid make_grid(double pump_freq, double half_span, int n_points);

}  // namespace pairwise
