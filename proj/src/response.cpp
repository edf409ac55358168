#include "pairwise/response.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pairwise/constants.hpp"
#include "pairwise/curve.hpp"
#include "pairwise/fft.hpp"
#include "pairwise/rng.hpp"

namespace pairwise {

double SfgSpectrum::at_pump() const {
  return values[values.size() / 2];
}

double SfgSpectrum::value_at(double output_freq) const {
  double d = output_freq - pump_freq;
  if (d < sum_detuning.front() - 0.5 * spacing || d > sum_detuning.back() + 0.5 * spacing)
    throw std::out_of_range("SfgSpectrum::value_at: frequency outside twice the input support");
  auto idx = std::llround((d - sum_detuning.front()) / spacing);
  idx = std::clamp(idx, 0ll, static_cast<long long>(values.size()) - 1);
  return values[static_cast<std::size_t>(idx)];
}

double SfgSpectrum::background(double window) const {
  const std::size_t center = values.size() / 2;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t m = 0; m < values.size(); ++m) {
    if (m == center) continue;
    if (std::abs(sum_detuning[m]) > window) continue;
    sum += values[m];
    ++n;
  }
  if (n == 0) throw std::invalid_argument("SfgSpectrum::background: window contains no bins");
  return sum / double(n);
}

SfgSpectrum sfg_spectrum(const SpectralField& field) {
  const int n = field.grid.n_points;
  const double dw = field.grid.spacing();
  auto c = autoconvolve(field.amp);  // length 2n-1, center bin m = n-1 is W = w_p
  SfgSpectrum out;
  out.pump_freq = field.grid.pump_freq;
  out.spacing = dw;
  out.sum_detuning.resize(c.size());
  out.values.resize(c.size());
  for (std::size_t m = 0; m < c.size(); ++m) {
    out.sum_detuning[m] = (double(m) - (n - 1)) * dw;
    out.values[m] = std::norm(0.5 * dw * c[m]);
  }
  return out;
}

cdouble pair_sum_amplitude(const SpectralField& field) {
  const auto& grid = field.grid;
  cdouble sum{0.0, 0.0};
  for (int j = 0; j < grid.n_points; ++j) sum += field.amp[j] * field.amp[grid.twin(j)];
  return 0.5 * grid.spacing() * sum;
}

namespace {

// phi(w) + phi(w_p - w) per signal mode, i.e. the phase a frequency pair
// accumulates under the mask
std::vector<double> pair_phase(const SpectralGrid& grid, const PhaseMask* mask) {
  std::vector<double> out(grid.size() / 2, 0.0);
  if (!mask) return out;
  auto phi = mask_phase_profile(grid, *mask);
  for (int j = grid.signal_begin(); j < grid.n_points; ++j)
    out[j - grid.signal_begin()] = phi[j] + phi[grid.twin(j)];
  return out;
}

double peak_from_weights(const SpectralGrid& grid, std::span<const double> weights, const PhaseMask* mask) {
  auto phase = pair_phase(grid, mask);
  cdouble sum{0.0, 0.0};
  for (int j = grid.signal_begin(); j < grid.n_points; ++j)
    sum += weights[j] * std::polar(1.0, phase[j - grid.signal_begin()]);
  return std::norm(sum * grid.spacing());
}

}  // namespace

double coherent_peak(const ConjugatePair& pair, const PhaseMask* mask) {
  const auto& grid = pair.grid();
  std::vector<double> w(grid.size(), 0.0);
  for (int j = grid.signal_begin(); j < grid.n_points; ++j) w[j] = std::norm(pair.field.amp[j]);
  return peak_from_weights(grid, w, mask);
}

double coherent_peak_envelope(const SpectralField& field, const PhaseMask* mask) {
  std::vector<double> w(field.envelope.size());
  const double dw = field.grid.spacing();
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = field.envelope[j] * dw;
  return peak_from_weights(field.grid, w, mask);
}

ResponseTrace delay_scan(const ConjugatePair& pair, std::span<const double> taus) {
  const auto& grid = pair.grid();
  const double dw = grid.spacing();
  const double unambiguous = two_pi / dw;
  ResponseTrace trace;
  trace.axis_label = "delay_s";
  trace.value_label = "response";
  for (double tau : taus) {
    if (std::abs(tau) >= unambiguous)
      throw std::invalid_argument("delay_scan: |tau| outside the grid's unambiguity window 2pi/dw");
    cdouble sum{0.0, 0.0};
    for (int j = grid.signal_begin(); j < grid.n_points; ++j)
      sum += std::norm(pair.field.amp[j]) * std::polar(1.0, grid.detuning(j) * tau);
    trace.axis.push_back(tau);
    trace.values.push_back(std::norm(sum * dw));
  }
  return trace;
}

ResponseTrace pump_detuning_scan(const LineModel& line, std::span<const double> detunings,
                                 double background_ratio) {
  if (line.pump_width <= 0.0 || line.final_width <= 0.0)
    throw std::invalid_argument("pump_detuning_scan: widths must be positive");
  const double sigma = 0.5 * line.pump_width / std::sqrt(std::log(2.0));  // gaussian e^{-x^2/s^2}, FWHM -> s
  const double hwhm = 0.5 * line.final_width;                             // lorentzian half width

  // numerical convolution on a grid wide enough for both profiles
  auto voigt = [&](double d) {
    const double span = 8.0 * sigma + 40.0 * hwhm;
    const int n = 4001;
    const double h = 2.0 * span / (n - 1);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      double x = -span + i * h;
      double g = std::exp(-x * x / (sigma * sigma));
      double u = (d - x) / hwhm;
      acc += g / (1.0 + u * u);
    }
    return acc * h;
  };

  const double peak = voigt(0.0);
  ResponseTrace trace;
  trace.axis_label = "pump_detuning_rad_s";
  trace.value_label = "response";
  for (double d : detunings) {
    trace.axis.push_back(d);
    trace.values.push_back(voigt(d) / peak + background_ratio);
  }
  return trace;
}

ResponseTrace control_transfer(const ConjugatePair& pair, std::span<const double> amplitudes,
                               double square_period) {
  const auto& grid = pair.grid();
  // balance check: spectral power (envelope) in the 0- and phi-phase regions
  PhaseMask probe = PhaseMask::square_wave(square_period, 1.0, MaskTarget::signal);
  auto phi = mask_phase_profile(grid, probe);
  double p0 = 0.0, p1 = 0.0;
  for (int j = grid.signal_begin(); j < grid.n_points; ++j)
    (phi[j] > 0.5 ? p1 : p0) += pair.field.envelope[j];
  if (p0 + p1 <= 0.0) throw std::invalid_argument("control_transfer: empty envelope");
  if (std::abs(p0 - p1) > 0.01 * (p0 + p1))
    throw std::invalid_argument("control_transfer: square-wave regions carry unequal spectral power (> 1%)");

  const double base = coherent_peak_envelope(pair.field, nullptr);
  ResponseTrace trace;
  trace.axis_label = "mask_amplitude_rad";
  trace.value_label = "normalized_peak";
  for (double a : amplitudes) {
    PhaseMask mask = PhaseMask::square_wave(square_period, a, MaskTarget::signal);
    trace.axis.push_back(a);
    trace.values.push_back(coherent_peak_envelope(pair.field, &mask) / base);
  }
  return trace;
}

RatioEstimate enhancement_ratio(const ConjugatePair& prototype, int n_realizations) {
  if (n_realizations < 100) throw std::invalid_argument("enhancement_ratio: need >= 100 realizations");
  const auto& grid = prototype.grid();
  if (grid.n_points < 8) throw std::invalid_argument("enhancement_ratio: grid too small");

  // average the off-peak bins over a narrow band so the triangular overlap
  // count stays within ~5% of the center value
  const double window = 0.1 * (2.0 * grid.half_span);
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < n_realizations; ++r) {
    auto pair = sample_down_converted(grid, prototype.field.envelope, derive_seed(prototype.seed, r));
    auto spec = sfg_spectrum(pair.field);
    double ratio = spec.at_pump() / spec.background(window);
    sum += ratio;
    sum2 += ratio * ratio;
  }
  RatioEstimate est;
  est.n_realizations = n_realizations;
  est.measured = sum / n_realizations;
  double var = (sum2 - sum * sum / n_realizations) / (n_realizations - 1.0);
  est.stderr_ = std::sqrt(std::max(var, 0.0) / n_realizations);
  est.ci_low = est.measured - 1.96 * est.stderr_;
  est.ci_high = est.measured + 1.96 * est.stderr_;
  est.analytic = enhancement_analytic(2.0 * grid.half_span, grid.spacing());
  return est;
}

double enhancement_analytic(double delta_total, double delta_pump) {
  if (delta_total <= 0.0 || delta_pump <= 0.0)
    throw std::invalid_argument("enhancement_analytic: bandwidths must be positive");
  return delta_total / (2.0 * delta_pump);
}

double equivalent_pulse_duration(const SpectralGrid& grid, const std::vector<double>& envelope,
                                 WidthKind kind) {
  if (envelope.size() != grid.size())
    throw std::invalid_argument("equivalent_pulse_duration: envelope length does not match grid");
  double total = 0.0, m2 = 0.0;
  for (int j = 0; j < grid.n_points; ++j) {
    total += envelope[j];
    m2 += envelope[j] * grid.detuning(j) * grid.detuning(j);
  }
  if (total <= 0.0) throw std::invalid_argument("equivalent_pulse_duration: envelope not normalizable");
  const double sigma_w = std::sqrt(m2 / total);
  if (sigma_w <= 0.0) throw std::invalid_argument("equivalent_pulse_duration: envelope has zero spectral width");

  // transform-limited field: amp = sqrt(envelope), constant phase; evaluate
  // |A(t)|^2 directly on a time grid ~20x wider than the expected duration
  const double t_scale = 1.0 / sigma_w;
  const int nt = 4001;
  std::vector<double> t(nt), intensity(nt);
  for (int m = 0; m < nt; ++m) t[m] = -20.0 * t_scale + 40.0 * t_scale * m / (nt - 1);
  std::vector<double> amp(grid.size());
  for (int j = 0; j < grid.n_points; ++j) amp[j] = std::sqrt(envelope[j]);
  for (int m = 0; m < nt; ++m) {
    // rotator recurrence over the uniform detuning grid
    cdouble rot = std::polar(1.0, -grid.detuning(0) * t[m]);
    const cdouble step = std::polar(1.0, -grid.spacing() * t[m]);
    cdouble a{0.0, 0.0};
    for (int j = 0; j < grid.n_points; ++j) {
      a += amp[j] * rot;
      rot *= step;
    }
    intensity[m] = std::norm(a);
  }
  return width(t, intensity, kind);
}

}  // namespace pairwise
