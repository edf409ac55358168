#include "pairwise/mask.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pairwise {

PhaseMask PhaseMask::delay(double tau, MaskTarget t) {
  PhaseMask m;
  m.kind = Kind::delay;
  m.target = t;
  m.delay_s = tau;
  return m;
}

PhaseMask PhaseMask::dispersion(int order, double coeff, MaskTarget t) {
  if (order < 2) throw std::invalid_argument("PhaseMask::dispersion: order must be >= 2");
  PhaseMask m;
  m.kind = Kind::dispersion;
  m.target = t;
  m.dispersion_order = order;
  m.dispersion_coeff = coeff;
  return m;
}

PhaseMask PhaseMask::square_wave(double period, double amplitude, MaskTarget t) {
  if (period <= 0.0) throw std::invalid_argument("PhaseMask::square_wave: period must be positive");
  PhaseMask m;
  m.kind = Kind::square_wave;
  m.target = t;
  m.square_period = period;
  m.square_amplitude = amplitude;
  return m;
}

PhaseMask PhaseMask::step(double position, double amplitude, MaskTarget t) {
  PhaseMask m;
  m.kind = Kind::step;
  m.target = t;
  m.step_position = position;
  m.step_amplitude = amplitude;
  return m;
}

PhaseMask PhaseMask::tabulated(std::vector<double> values, MaskTarget t) {
  PhaseMask m;
  m.kind = Kind::tabulated;
  m.target = t;
  m.table = std::move(values);
  return m;
}

PhaseMask PhaseMask::inverted() const {
  PhaseMask m = *this;
  m.delay_s = -m.delay_s;
  m.dispersion_coeff = -m.dispersion_coeff;
  m.square_amplitude = -m.square_amplitude;
  m.step_amplitude = -m.step_amplitude;
  for (auto& v : m.table) v = -v;
  return m;
}

double PhaseMask::phase_at(double d) const {
  switch (kind) {
    case Kind::delay:
      return delay_s * d;
    case Kind::dispersion:
      return dispersion_coeff * std::pow(d, dispersion_order);
    case Kind::square_wave: {
      double blocks = std::floor(2.0 * std::abs(d) / square_period);
      bool odd = std::fmod(blocks, 2.0) >= 1.0;
      return odd ? square_amplitude : 0.0;
    }
    case Kind::step:
      return std::abs(d) >= step_position ? step_amplitude : 0.0;
    case Kind::tabulated:
      throw std::logic_error("PhaseMask::phase_at: tabulated masks are resolved per mode");
  }
  return 0.0;
}

std::vector<double> mask_phase_profile(const SpectralGrid& grid, const PhaseMask& mask) {
  if (mask.kind == PhaseMask::Kind::tabulated && mask.table.size() != grid.size())
    throw std::invalid_argument("mask_phase_profile: tabulated mask length does not match grid");
  std::vector<double> phi(grid.size(), 0.0);
  for (int j = 0; j < grid.n_points; ++j) {
    bool on = mask.target == MaskTarget::both || (mask.target == MaskTarget::signal && grid.is_signal(j)) ||
              (mask.target == MaskTarget::idler && !grid.is_signal(j));
    if (!on) continue;
    phi[j] = (mask.kind == PhaseMask::Kind::tabulated) ? mask.table[j] : mask.phase_at(grid.detuning(j));
  }
  return phi;
}

SpectralField apply_mask(const SpectralField& field, const PhaseMask& mask) {
  auto phi = mask_phase_profile(field.grid, mask);
  SpectralField out = field;
  for (std::size_t j = 0; j < out.amp.size(); ++j) out.amp[j] *= std::polar(1.0, phi[j]);
  return out;
}

ConjugatePair apply_mask(const ConjugatePair& pair, const PhaseMask& mask) {
  ConjugatePair out = pair;
  out.field = apply_mask(pair.field, mask);
  return out;
}

}  // namespace pairwise
