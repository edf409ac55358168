#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pairwise/grid.hpp"

namespace pairwise {

using cdouble = std::complex<double>;

// Spectral power density as a function of absolute angular frequency.
using EnvelopeFn = std::function<double(double omega)>;

enum class WidthKind { fwhm, one_over_e_full };

// Gaussian spectral power density centered on `center`, with the given full
// width of the *power* profile measured per `kind` (default: full width at
// 1/e, the convention used throughout for optical bandwidths).
EnvelopeFn gaussian_envelope(double center, double width, WidthKind kind = WidthKind::one_over_e_full,
                             double peak = 1.0);
EnvelopeFn flat_envelope(double level = 1.0);

struct SpectralField {
  SpectralGrid grid;
  std::vector<cdouble> amp;      // complex amplitude per mode, sqrt(power/bandwidth) units
  std::vector<double> envelope;  // target power density |A|^2 per mode

  double total_power() const;     // sum |amp|^2 dw
  double envelope_power() const;  // sum envelope dw
};

SpectralField make_field(const SpectralGrid& grid, const EnvelopeFn& envelope);

// Down-converted realization: each signal mode (detuning > 0) is an
// independent circular complex gaussian with variance envelope(w)*dw, and the
// idler twin carries the exact conjugate, A(-d) = conj(A(+d)).
struct ConjugatePair {
  SpectralField field;  // full grid, conjugate-filled at construction
  std::uint64_t seed = 0;

  const SpectralGrid& grid() const { return field.grid; }
  // power in the signal half: sum over d>0 of |A|^2 dw
  double signal_power() const;
};

ConjugatePair sample_down_converted(const SpectralGrid& grid, const EnvelopeFn& envelope, std::uint64_t seed);
ConjugatePair sample_down_converted(const SpectralGrid& grid, const std::vector<double>& envelope,
                                    std::uint64_t seed);

// Same envelope but fully incoherent: every mode independent, no signal-idler
// conjugation. Null model for the coherent-peak comparisons.
SpectralField sample_incoherent(const SpectralGrid& grid, const EnvelopeFn& envelope, std::uint64_t seed);

// Complex envelope relative to the carrier at pump_freq/2, on the conjugate
// time grid t_m = (m - n/2) dt with dt = 2 pi / (n dw).
//
// Convention: A(t) = (1/2pi) integral A(w) e^{-i w t} dw, discretized as
//   A(t_m) = (dw/2pi) sum_j A_j e^{-i d_j t_m}.
struct TimeEnvelope {
  double t0 = 0.0;  // time of sample 0 (s)
  double dt = 0.0;  // spacing (s)
  std::vector<cdouble> values;

  double time(int m) const { return t0 + m * dt; }
  double total_power() const;  // sum |values|^2 dt
};

TimeEnvelope to_time_domain(const SpectralField& field);
// Inverse of to_time_domain back onto `grid` (round-trip identity).
SpectralField from_time_domain(const TimeEnvelope& env, const SpectralGrid& grid);

// columnar text, one mode per row: detuning_rad_s re im
void write_field(const std::string& path, const SpectralField& field);

}  // namespace pairwise
