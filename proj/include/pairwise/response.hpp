#pragma once

#include <optional>
#include <span>
#include <string>

#include "pairwise/field.hpp"
#include "pairwise/mask.hpp"

namespace pairwise {

struct ResponseTrace {
  std::string axis_label;
  std::string value_label;
  std::vector<double> axis;
  std::vector<double> values;
  std::vector<double> stderr_;  // empty for deterministic traces
  int n_realizations = 1;
};

// SFG/TPA output spectrum of the combined field:
//   R(W) = | (1/2) sum_j A_j A(W - w_j) dw |^2
// on the natural output bins W = w_p + m dw. The 1/2 counts every unordered
// mode pair once, so for an unmasked conjugate pair the W = w_p bin equals
// (sum over the signal half of |A_s|^2 dw)^2 exactly.
struct SfgSpectrum {
  double pump_freq = 0.0;
  double spacing = 0.0;
  std::vector<double> sum_detuning;  // W - w_p per bin
  std::vector<double> values;

  double at_pump() const;  // exact central bin
  // nearest-bin value at the requested output frequency W (the bin width is
  // the resolution floor); W must lie within twice the input support
  double value_at(double output_freq) const;
  // mean over bins with |sum detuning| <= window, central bin excluded
  double background(double window) const;
};

SfgSpectrum sfg_spectrum(const SpectralField& field);

// complex amplitude of the W = w_p bin, (1/2) sum_j A_j A_twin(j) dw
cdouble pair_sum_amplitude(const SpectralField& field);

// | sum_{d>0} |A_s|^2 exp(i [phi(w) + phi(w_p - w)]) dw |^2 with the realized
// mode powers. Signal-only masks contribute their phase once.
double coherent_peak(const ConjugatePair& pair, const PhaseMask* mask = nullptr);
// Same sum with the ensemble-mean weights (the envelope) instead of one
// realization; deterministic transfer curves use this.
double coherent_peak_envelope(const SpectralField& field, const PhaseMask* mask = nullptr);

// trace(tau) = | sum |A_s(w)|^2 e^{i w tau} dw |^2, peaked at tau = 0
ResponseTrace delay_scan(const ConjugatePair& pair, std::span<const double> taus);

// Coherent TPA peak vs pump detuning: gaussian pump power spectrum (width
// gamma_p) convolved with the lorentzian final-state line (width gamma_f),
// normalized to 1 on resonance; optional flat incoherent pedestal expressed
// relative to the peak. Widths are FWHM of the respective profiles.
struct LineModel {
  double pump_width = 0.0;   // gamma_p, rad/s (FWHM, gaussian)
  double final_width = 0.0;  // gamma_f, rad/s (FWHM, lorentzian)
};

ResponseTrace pump_detuning_scan(const LineModel& line, std::span<const double> detunings,
                                 double background_ratio = 0.0);

// Normalized coherent peak vs square-wave amplitude; follows cos^2(phi/2)
// when the 0- and phi-phase regions carry equal spectral power. Evaluated on
// the envelope (the ensemble-mean transfer); throws if the two regions are
// unbalanced by more than 1%.
ResponseTrace control_transfer(const ConjugatePair& pair, std::span<const double> amplitudes,
                               double square_period);

struct RatioEstimate {
  double measured = 0.0;
  double stderr_ = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double analytic = 0.0;
  int n_realizations = 0;
};

// Monte Carlo estimate of R(w_p) / <R(W != w_p)> for fresh noise realizations
// of the prototype's envelope. The pump is one grid bin wide (delta pump), so
// the analytic expectation is G = Delta/(2 delta) = n_points/2.
RatioEstimate enhancement_ratio(const ConjugatePair& prototype, int n_realizations);

// G = Delta / (2 delta) for arbitrary bandwidths (same units for both).
double enhancement_analytic(double delta_total, double delta_pump);

// Duration of the transform-limited pulse carrying the given spectral power
// envelope: width of |A(t)|^2 measured per `kind` (defaults to the 1/e
// convention used for bandwidths).
double equivalent_pulse_duration(const SpectralGrid& grid, const std::vector<double>& envelope,
                                 WidthKind kind = WidthKind::one_over_e_full);

}  // namespace pairwise
