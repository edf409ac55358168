#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pairwise/field.hpp"
#include "pairwise/mask.hpp"
#include "pairwise/response.hpp"

namespace pairwise {

enum class Modulation { ook, psk };

// One user channel: a unique signal-idler delay signature plus the data
// modulation. Delays of distinct channels must differ by more than the key
// coherence time 2/Delta.
struct Channel {
  int id = 0;
  double delay = 0.0;  // s
  Modulation modulation = Modulation::psk;
};

struct LinkBudget {
  double total_bandwidth = 0.0;  // Delta, rad/s
  double data_bandwidth = 0.0;   // delta, rad/s (pump/data bandwidth)
  double snr_min = 0.0;          // s/n
  int n_channels = 1;
};

// Shared-key generation is spectral-core sampling: all channels modulate
// copies of one key's signal half while the idler half travels unmodulated.
ConjugatePair gen_keys(const SpectralGrid& grid, const EnvelopeFn& envelope, std::uint64_t seed);

// OOK multiplies the signal amplitude by the bit; PSK multiplies by
// exp(i pi bit). Acts on the signal half only.
SpectralField encode(const SpectralField& key_field, int bit, Modulation modulation);

// Combined multiplexer output: undelayed conjugate key (idler half) plus the
// per-channel encoded and delayed signal copies. Throws on delay collisions
// (closer than 2/Delta). An optional secret mask is applied to the signal
// band after encoding (spectral phase signature; decode must undo it).
SpectralField mux(std::span<const Channel> channels, std::span<const int> bits, const ConjugatePair& key,
                  const PhaseMask* secret = nullptr);

// Receiver for one channel: undo the delay (and the secret mask when given),
// then read the complex SFG amplitude in the pump bin.
cdouble decode(const SpectralField& combined, double delay, const PhaseMask* secret = nullptr);

struct BerResult {
  int n_channels = 0;
  long frames = 0;
  long bits = 0;
  long errors = 0;
  double ber = 0.0;
  double ci_low = 0.0;   // Wilson 95%
  double ci_high = 0.0;
};

// Frame-level Monte Carlo: every frame draws a fresh key realization and
// random bits on all channels. OOK thresholds |c|^2 at half the matched
// envelope level; PSK decides on the sign of Re(c conj(c_ref)) against the
// unmodulated reference channel 0 (its up-converted field replicates the
// pump and serves as the shared phase reference).
BerResult ber_monte_carlo(const LinkBudget& budget, Modulation modulation, int n_frames,
                          std::uint64_t seed);

// N = (1/2) (1/(s/n)) (Delta/delta)
double capacity(double delta_total, double delta_data, double snr_min);

// Deterministic coherent-peak transfer vs dispersion coefficient of the
// given order, the mask covering the full band about w_p/2 (envelope
// weights).
ResponseTrace dispersion_sensitivity(const ConjugatePair& pair, int order,
                                     std::span<const double> coefficients);

}  // namespace pairwise
