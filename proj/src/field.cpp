#include "pairwise/field.hpp"

#include <cmath>
#include <stdexcept>

#include "pairwise/constants.hpp"
#include "pairwise/fft.hpp"
#include "pairwise/rng.hpp"
#include "pairwise/table.hpp"

namespace pairwise {

EnvelopeFn gaussian_envelope(double center, double width, WidthKind kind, double peak) {
  if (width <= 0.0) throw std::invalid_argument("gaussian_envelope: width must be positive");
  // power density exp(-d^2/sigma^2)
  double sigma = (kind == WidthKind::one_over_e_full) ? 0.5 * width : 0.5 * width / std::sqrt(std::log(2.0));
  return [center, sigma, peak](double omega) {
    double d = (omega - center) / sigma;
    return peak * std::exp(-d * d);
  };
}

EnvelopeFn flat_envelope(double level) {
  return [level](double) { return level; };
}

double SpectralField::total_power() const {
  double s = 0.0;
  for (const auto& a : amp) s += std::norm(a);
  return s * grid.spacing();
}

double SpectralField::envelope_power() const {
  double s = 0.0;
  for (double e : envelope) s += e;
  return s * grid.spacing();
}

SpectralField make_field(const SpectralGrid& grid, const EnvelopeFn& envelope) {
  SpectralField f;
  f.grid = grid;
  f.amp.assign(grid.size(), cdouble{0.0, 0.0});
  f.envelope.resize(grid.size());
  for (int j = 0; j < grid.n_points; ++j) {
    double e = envelope(grid.frequency(j));
    if (e < 0.0) throw std::invalid_argument("make_field: envelope must be nonnegative");
    f.envelope[j] = e;
  }
  return f;
}

double ConjugatePair::signal_power() const {
  double s = 0.0;
  for (int j = field.grid.signal_begin(); j < field.grid.n_points; ++j) s += std::norm(field.amp[j]);
  return s * field.grid.spacing();
}

ConjugatePair sample_down_converted(const SpectralGrid& grid, const EnvelopeFn& envelope, std::uint64_t seed) {
  std::vector<double> env(grid.size());
  for (int j = 0; j < grid.n_points; ++j) env[j] = envelope(grid.frequency(j));
  return sample_down_converted(grid, env, seed);
}

ConjugatePair sample_down_converted(const SpectralGrid& grid, const std::vector<double>& envelope,
                                    std::uint64_t seed) {
  if (envelope.size() != grid.size())
    throw std::invalid_argument("sample_down_converted: envelope length does not match grid");
  ConjugatePair pair;
  pair.seed = seed;
  pair.field.grid = grid;
  pair.field.envelope = envelope;
  pair.field.amp.assign(grid.size(), cdouble{0.0, 0.0});
  const double dw = grid.spacing();
  NoiseRng rng(seed);
  for (int j = grid.signal_begin(); j < grid.n_points; ++j) {
    double var = envelope[j];
    if (var < 0.0) throw std::invalid_argument("sample_down_converted: envelope must be nonnegative");
    cdouble a = rng.circular(var * dw);
    pair.field.amp[j] = a;
    pair.field.amp[grid.twin(j)] = std::conj(a);
  }
  return pair;
}

SpectralField sample_incoherent(const SpectralGrid& grid, const EnvelopeFn& envelope, std::uint64_t seed) {
  SpectralField f = make_field(grid, envelope);
  const double dw = grid.spacing();
  NoiseRng rng(seed);
  for (int j = 0; j < grid.n_points; ++j) f.amp[j] = rng.circular(f.envelope[j] * dw);
  return f;
}

double TimeEnvelope::total_power() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s * dt;
}

// The half-offset detunings d_j = (j - n/2 + 1/2) dw need explicit twiddle
// factors on top of the plain DFT:
//   A(t_m) = (dw/2pi) c_m sum_j [A_j (-1)^j] e^{-2 pi i j m / n},
//   c_m = e^{-2 pi i (1/2 - n/2)(m - n/2)/n}.
TimeEnvelope to_time_domain(const SpectralField& field) {
  const int n = field.grid.n_points;
  const double dw = field.grid.spacing();
  TimeEnvelope env;
  env.dt = two_pi / (n * dw);
  env.t0 = -0.5 * n * env.dt;

  std::vector<cdouble> b(field.amp);
  for (int j = 1; j < n; j += 2) b[j] = -b[j];
  auto spec = dft(b, false);
  env.values.resize(n);
  const double scale = dw / two_pi;
  for (int m = 0; m < n; ++m) {
    double phase = -two_pi * (0.5 - 0.5 * n) * (m - 0.5 * n) / n;
    env.values[m] = scale * std::polar(1.0, phase) * spec[m];
  }
  return env;
}

SpectralField from_time_domain(const TimeEnvelope& env, const SpectralGrid& grid) {
  const int n = grid.n_points;
  if (static_cast<int>(env.values.size()) != n)
    throw std::invalid_argument("from_time_domain: sample count does not match grid");
  // invert the twiddles, then the DFT: A_j = dt sum_m A(t_m) e^{+i d_j t_m}
  std::vector<cdouble> b(env.values.size());
  for (int m = 0; m < n; ++m) {
    double phase = -two_pi * (0.5 - 0.5 * n) * (m - 0.5 * n) / n;
    b[m] = env.values[m] * std::polar(1.0, -phase);
  }
  auto spec = dft(b, true);
  SpectralField f;
  f.grid = grid;
  f.envelope.assign(grid.size(), 0.0);
  f.amp.resize(grid.size());
  for (int j = 0; j < n; ++j) {
    double sign = (j % 2 == 0) ? 1.0 : -1.0;
    f.amp[j] = env.dt * sign * spec[j];
    f.envelope[j] = std::norm(f.amp[j]);
  }
  return f;
}

void write_field(const std::string& path, const SpectralField& field) {
  std::vector<double> d(field.grid.size()), re(field.grid.size()), im(field.grid.size());
  for (int j = 0; j < field.grid.n_points; ++j) {
    d[j] = field.grid.detuning(j);
    re[j] = field.amp[j].real();
    im[j] = field.amp[j].imag();
  }
  write_table(path, {"detuning_rad_s", "re", "im"}, {d, re, im});
}

}  // namespace pairwise
