#include "pairwise/ocdma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pairwise/constants.hpp"
#include "pairwise/rng.hpp"

namespace pairwise {

ConjugatePair gen_keys(const SpectralGrid& grid, const EnvelopeFn& envelope, std::uint64_t seed) {
  return sample_down_converted(grid, envelope, seed);
}

SpectralField encode(const SpectralField& key_field, int bit, Modulation modulation) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("encode: bit must be 0 or 1");
  SpectralField out = key_field;
  const auto& grid = out.grid;
  for (int j = grid.signal_begin(); j < grid.n_points; ++j) {
    if (modulation == Modulation::ook)
      out.amp[j] *= double(bit);
    else if (bit == 1)
      out.amp[j] = -out.amp[j];  // exp(i pi)
  }
  return out;
}

SpectralField mux(std::span<const Channel> channels, std::span<const int> bits, const ConjugatePair& key,
                  const PhaseMask* secret) {
  if (channels.size() != bits.size()) throw std::invalid_argument("mux: one bit per channel required");
  const auto& grid = key.grid();
  const double min_gap = 2.0 / (2.0 * grid.half_span);  // key coherence time 2/Delta
  for (std::size_t a = 0; a < channels.size(); ++a)
    for (std::size_t b = a + 1; b < channels.size(); ++b)
      if (std::abs(channels[a].delay - channels[b].delay) <= min_gap)
        throw std::invalid_argument("mux: channel delays closer than the key coherence time 2/Delta");

  SpectralField combined = key.field;
  // idler half stays as the conjugate key; signal half is rebuilt from the
  // per-channel encoded, delayed copies
  for (int j = grid.signal_begin(); j < grid.n_points; ++j) combined.amp[j] = cdouble{0.0, 0.0};

  for (std::size_t c = 0; c < channels.size(); ++c) {
    SpectralField enc = encode(key.field, bits[c], channels[c].modulation);
    if (secret) enc = apply_mask(enc, *secret);
    PhaseMask d = PhaseMask::delay(channels[c].delay, MaskTarget::signal);
    enc = apply_mask(enc, d);
    for (int j = grid.signal_begin(); j < grid.n_points; ++j) combined.amp[j] += enc.amp[j];
  }
  return combined;
}

cdouble decode(const SpectralField& combined, double delay, const PhaseMask* secret) {
  SpectralField rx = apply_mask(combined, PhaseMask::delay(-delay, MaskTarget::signal));
  if (secret) rx = apply_mask(rx, secret->inverted());
  return pair_sum_amplitude(rx);
}

BerResult ber_monte_carlo(const LinkBudget& budget, Modulation modulation, int n_frames,
                          std::uint64_t seed) {
  if (n_frames < 100) throw std::invalid_argument("ber_monte_carlo: need >= 100 frames");
  if (budget.n_channels < 1) throw std::invalid_argument("ber_monte_carlo: need >= 1 channel");
  if (!(budget.total_bandwidth > 2.0 * budget.data_bandwidth))
    throw std::invalid_argument("ber_monte_carlo: need Delta > 2 delta");

  // data bandwidth delta maps onto the detection-bin width: n = Delta/delta
  int n_points = int(std::round(budget.total_bandwidth / budget.data_bandwidth));
  if (n_points % 2) ++n_points;
  n_points = std::max(n_points, 8);
  const double half_span = 0.5 * budget.total_bandwidth;
  // pump frequency drops out of the decision statistics; any carrier works
  SpectralGrid grid = make_grid(1e10 * half_span, half_span, n_points);

  const bool psk = modulation == Modulation::psk;
  const int k = budget.n_channels;
  // PSK reserves channel 0 as the unmodulated phase reference
  const int first_data = psk ? 1 : 0;
  if (psk && k < 2) throw std::invalid_argument("ber_monte_carlo: PSK needs the reference plus data channels");

  std::vector<Channel> channels(k);
  // delay signatures on the conjugate time grid (even multiples of dt): the
  // unit-weight channel cross sums then vanish identically and interference
  // is the pure random-walk term
  const double dt = two_pi / (grid.n_points * grid.spacing());
  const double gap = 2.0 * dt;
  for (int c = 0; c < k; ++c) channels[c] = {c, c * gap, modulation};

  std::vector<double> env(grid.size(), 1.0);
  // matched level for the OOK threshold: the envelope-mean coherent
  // amplitude is sum over the signal half of E|A|^2 dw = env dw^2
  double f0 = 0.0;
  for (int j = grid.signal_begin(); j < grid.n_points; ++j)
    f0 += env[j] * grid.spacing() * grid.spacing();
  const double ook_threshold = 0.5 * f0 * f0;

  BerResult result;
  result.n_channels = k;
  result.frames = n_frames;

  std::vector<int> bits(k, 0);
  for (int frame = 0; frame < n_frames; ++frame) {
    auto key = sample_down_converted(grid, env, derive_seed(seed, frame));
    NoiseRng bitgen(derive_seed(seed ^ 0x5bd1e995u, frame));
    for (int c = 0; c < k; ++c) bits[c] = bitgen.uniform() < 0.5 ? 0 : 1;
    if (psk) bits[0] = 0;

    auto combined = mux(channels, bits, key);
    cdouble ref{1.0, 0.0};
    if (psk) ref = decode(combined, channels[0].delay);
    for (int c = first_data; c < k; ++c) {
      cdouble stat = decode(combined, channels[c].delay);
      int decided;
      if (psk)
        decided = (stat * std::conj(ref)).real() >= 0.0 ? 0 : 1;
      else
        decided = std::norm(stat) >= ook_threshold ? 1 : 0;
      ++result.bits;
      if (decided != bits[c]) ++result.errors;
    }
  }

  result.ber = double(result.errors) / double(result.bits);
  // Wilson 95% interval
  const double z = 1.959963984540054;
  const double n = double(result.bits);
  const double p = result.ber;
  const double denom = 1.0 + z * z / n;
  const double center = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  result.ci_low = std::max(0.0, center - half);
  result.ci_high = std::min(1.0, center + half);
  return result;
}

double capacity(double delta_total, double delta_data, double snr_min) {
  if (delta_total <= 0.0 || delta_data <= 0.0 || snr_min <= 0.0)
    throw std::invalid_argument("capacity: all inputs must be positive");
  return 0.5 * (delta_total / delta_data) / snr_min;
}

ResponseTrace dispersion_sensitivity(const ConjugatePair& pair, int order,
                                     std::span<const double> coefficients) {
  ResponseTrace trace;
  trace.axis_label = "coefficient_s" + std::to_string(order);
  trace.value_label = "normalized_peak";
  const double base = coherent_peak_envelope(pair.field, nullptr);
  for (double c : coefficients) {
    PhaseMask mask = PhaseMask::dispersion(order, c, MaskTarget::both);
    trace.axis.push_back(c);
    trace.values.push_back(coherent_peak_envelope(pair.field, &mask) / base);
  }
  return trace;
}

}  // namespace pairwise
