#pragma once

#include <vector>

#include "pairwise/field.hpp"

namespace pairwise {

enum class MaskTarget { signal, idler, both };

// Pure spectral phase filter. Phases are functions of the detuning d from
// pump_freq/2:
//   delay:       phi = tau * d          (carrier phase at w_p/2 dropped; a
//                                        physical delay differs by a global
//                                        phase only)
//   dispersion:  phi = coeff * d^k      (signed d, so odd orders are
//                                        antisymmetric about the center)
//   square_wave: phi = A * s(|d|), s alternating 0/1 in blocks of period/2
//   step:        phi = A for |d| >= position
//   tabulated:   one phase value per mode of the grid it is applied to
struct PhaseMask {
  enum class Kind { delay, dispersion, square_wave, step, tabulated };

  Kind kind = Kind::delay;
  MaskTarget target = MaskTarget::both;

  double delay_s = 0.0;
  int dispersion_order = 2;
  double dispersion_coeff = 0.0;  // s^k
  double square_period = 0.0;     // rad/s
  double square_amplitude = 0.0;  // rad
  double step_position = 0.0;     // rad/s
  double step_amplitude = 0.0;    // rad
  std::vector<double> table;      // rad per mode

  static PhaseMask delay(double tau, MaskTarget t = MaskTarget::both);
  static PhaseMask dispersion(int order, double coeff, MaskTarget t = MaskTarget::both);
  static PhaseMask square_wave(double period, double amplitude, MaskTarget t = MaskTarget::signal);
  static PhaseMask step(double position, double amplitude, MaskTarget t = MaskTarget::both);
  static PhaseMask tabulated(std::vector<double> values, MaskTarget t = MaskTarget::both);

  PhaseMask inverted() const;  // same mask with negated phase

  // phase at a detuning (tabulated masks are resolved per mode instead)
  double phase_at(double detuning) const;
};

// Per-mode phase profile including target selection (zero off-target).
std::vector<double> mask_phase_profile(const SpectralGrid& grid, const PhaseMask& mask);

// amp(w) <- amp(w) exp(i phi(w)); magnitudes are untouched.
SpectralField apply_mask(const SpectralField& field, const PhaseMask& mask);
ConjugatePair apply_mask(const ConjugatePair& pair, const PhaseMask& mask);

}  // namespace pairwise
