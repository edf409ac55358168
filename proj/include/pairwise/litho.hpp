#pragma once

#include <complex>
#include <span>
#include <vector>

namespace pairwise {

// 1-D scalar paraxial model, uniform plane-wave illumination. The focal
// field of a lens-plane segment is its scaled Fourier transform,
//   E(x_f) = integral e(x_l) exp(-i k x_l x_f / f) dx_l,  k = 2 pi / lambda,
// so a full aperture D gives the sinc spot with first zero at lambda f / D.
struct Lens {
  double focal_length = 0.0;  // m
  double wavelength = 0.0;    // m
  double diameter = 0.0;      // m

  double spot_size() const { return wavelength * focal_length / diameter; }
};

struct Segment {
  double lo = 0.0;  // m, lens-plane interval
  double hi = 0.0;
  std::complex<double> amplitude{1.0, 0.0};
  int pulse_index = 0;
};

struct Aperture {
  Lens lens;
  std::vector<Segment> segments;  // non-overlapping, within the lens diameter
};

void validate(const Aperture& aperture);

// Focal-plane grid: +-half_width_spots of lambda f / D on each side, with
// points_per_spot samples per spot (>= 8 for paraxial sampling).
std::vector<double> focal_grid(const Lens& lens, double half_width_spots, int points_per_spot);

// Field at focus of the segments belonging to pulse_index (all segments for
// pulse_index < 0). Throws on undersampled grids.
std::vector<std::complex<double>> focal_field(const Aperture& aperture, std::span<const double> x_focus,
                                              int pulse_index = -1);

// Temporally non-overlapping pulses interfering through an N-photon
// transition at w_A: the quantum phase of pulse k is phi_k = w_A tau_k and
//   I(x) = | sum_k e^{i phi_k} E_k(x)^N |^2.
// Mixed terms between pulses are absent because the pulses never overlap.
struct PulseTrain {
  Aperture aperture;
  std::vector<double> phases;  // phi_k per pulse index
  int order = 1;               // N >= 1
};

std::vector<double> n_photon_pattern(const PulseTrain& train, std::span<const double> x_focus);

struct Pattern {
  std::vector<double> x;
  std::vector<double> intensity;
};

// Two equal segments on distinct pulses, centers separated by `separation`
// and each `seg_width` wide (contiguous halves of the aperture when both are
// zero). `phase` sweeps the spot from bright (0) to dark (pi at N even ...
// whatever value makes the center destructive for the given N).
Pattern two_segment_spot(const Lens& lens, int order, double phase, double separation = 0.0,
                         double seg_width = 0.0, double half_width_spots = 12.0,
                         int points_per_spot = 64);

struct SpotMetrics {
  double fwhm = 0.0;
  double lobe_spacing = 0.0;    // between the two highest maxima
  double sidelobe_ratio = 0.0;  // highest secondary peak / main peak
};
SpotMetrics spot_metrics(const Pattern& pattern);

// Third-pulse side-lobe suppression: adds one pulse with two ordinary foci
// centered on the two main side lobes of the two-segment bright spot; its
// amplitude and quantum phase come from a coarse grid search. Returns the
// patterns before and after plus the side-lobe ratios.
struct SuppressResult {
  Pattern before;
  Pattern after;
  double ratio_before = 0.0;
  double ratio_after = 0.0;
  double best_amplitude = 0.0;
  double best_phase = 0.0;
};
SuppressResult suppress_sidelobes(const Lens& lens, int order, double half_width_spots = 12.0,
                                  int points_per_spot = 64);

// M equal non-overlapping segments, one per pulse: shifts the side lobes
// outward without attenuating them.
Pattern segmented_spot(const Lens& lens, int order, int n_segments, double phase,
                       double half_width_spots = 12.0, int points_per_spot = 64);

}  // namespace pairwise
