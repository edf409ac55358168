#include "pairwise/litho.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pairwise/constants.hpp"
#include "pairwise/curve.hpp"

namespace pairwise {

void validate(const Aperture& aperture) {
  const auto& lens = aperture.lens;
  if (lens.focal_length <= 0.0 || lens.wavelength <= 0.0 || lens.diameter <= 0.0)
    throw std::invalid_argument("aperture: lens parameters must be positive");
  auto segs = aperture.segments;
  // segments of the same pulse must not overlap; distinct pulses never
  // coincide in time, so they may share lens regions
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) {
    return a.pulse_index != b.pulse_index ? a.pulse_index < b.pulse_index : a.lo < b.lo;
  });
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (segs[i].hi <= segs[i].lo) throw std::invalid_argument("aperture: empty segment");
    if (segs[i].lo < -0.5 * lens.diameter - 1e-12 || segs[i].hi > 0.5 * lens.diameter + 1e-12)
      throw std::invalid_argument("aperture: segment outside the lens diameter");
    if (i > 0 && segs[i].pulse_index == segs[i - 1].pulse_index && segs[i].lo < segs[i - 1].hi - 1e-15)
      throw std::invalid_argument("aperture: overlapping segments within one pulse");
  }
}

std::vector<double> focal_grid(const Lens& lens, double half_width_spots, int points_per_spot) {
  if (points_per_spot < 8)
    throw std::invalid_argument("focal_grid: need >= 8 points per diffraction spot");
  const double spot = lens.spot_size();
  const double step = spot / points_per_spot;
  const int half = int(std::ceil(half_width_spots * spot / step));
  std::vector<double> x(2 * half + 1);
  for (int i = 0; i <= 2 * half; ++i) x[i] = (i - half) * step;
  return x;
}

namespace {

// exact focal integral of one uniform segment at spatial frequency q = k x / f
cdouble segment_field(const Segment& s, double q) {
  if (q == 0.0) return s.amplitude * (s.hi - s.lo);
  const cdouble num = std::polar(1.0, -q * s.lo) - std::polar(1.0, -q * s.hi);
  return s.amplitude * num / cdouble{0.0, q};
}

void check_sampling(const Lens& lens, std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("focal grid needs >= 2 points");
  double max_step = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) max_step = std::max(max_step, x[i] - x[i - 1]);
  if (max_step > lens.spot_size() / 8.0 * (1.0 + 1e-9))
    throw std::invalid_argument("focal grid undersampled: need >= 8 points per lambda f / D");
}

}  // namespace

std::vector<cdouble> focal_field(const Aperture& aperture, std::span<const double> x_focus,
                                 int pulse_index) {
  validate(aperture);
  check_sampling(aperture.lens, x_focus);
  const double k = two_pi / aperture.lens.wavelength;
  std::vector<cdouble> field(x_focus.size(), cdouble{0.0, 0.0});
  for (std::size_t i = 0; i < x_focus.size(); ++i) {
    const double q = k * x_focus[i] / aperture.lens.focal_length;
    for (const auto& s : aperture.segments) {
      if (pulse_index >= 0 && s.pulse_index != pulse_index) continue;
      field[i] += segment_field(s, q);
    }
  }
  return field;
}

std::vector<double> n_photon_pattern(const PulseTrain& train, std::span<const double> x_focus) {
  if (train.order < 1) throw std::invalid_argument("n_photon_pattern: order N must be >= 1");
  int max_pulse = 0;
  for (const auto& s : train.aperture.segments) max_pulse = std::max(max_pulse, s.pulse_index);
  if (train.phases.size() < std::size_t(max_pulse + 1))
    throw std::invalid_argument("n_photon_pattern: missing pulse phases");

  std::vector<double> intensity(x_focus.size(), 0.0);
  std::vector<cdouble> sum(x_focus.size(), cdouble{0.0, 0.0});
  for (int p = 0; p <= max_pulse; ++p) {
    auto field = focal_field(train.aperture, x_focus, p);
    const cdouble rot = std::polar(1.0, train.phases[p]);
    for (std::size_t i = 0; i < field.size(); ++i) {
      cdouble en{1.0, 0.0};
      for (int n = 0; n < train.order; ++n) en *= field[i];
      sum[i] += rot * en;
    }
  }
  for (std::size_t i = 0; i < sum.size(); ++i) intensity[i] = std::norm(sum[i]);
  return intensity;
}

Pattern two_segment_spot(const Lens& lens, int order, double phase, double separation, double seg_width,
                         double half_width_spots, int points_per_spot) {
  if (separation == 0.0 && seg_width == 0.0) {
    separation = 0.5 * lens.diameter;  // contiguous halves
    seg_width = 0.5 * lens.diameter;
  }
  if (separation <= 0.0 || seg_width <= 0.0 || separation + seg_width > lens.diameter * (1.0 + 1e-12))
    throw std::invalid_argument("two_segment_spot: segments must fit the lens diameter");

  PulseTrain train;
  train.aperture.lens = lens;
  train.aperture.segments = {
      {-0.5 * separation - 0.5 * seg_width, -0.5 * separation + 0.5 * seg_width, {1.0, 0.0}, 0},
      {+0.5 * separation - 0.5 * seg_width, +0.5 * separation + 0.5 * seg_width, {1.0, 0.0}, 1},
  };
  train.phases = {0.0, phase};
  train.order = order;

  Pattern pat;
  pat.x = focal_grid(lens, half_width_spots, points_per_spot);
  pat.intensity = n_photon_pattern(train, pat.x);
  return pat;
}

Pattern segmented_spot(const Lens& lens, int order, int n_segments, double phase,
                       double half_width_spots, int points_per_spot) {
  if (n_segments < 2) throw std::invalid_argument("segmented_spot: need >= 2 segments");
  PulseTrain train;
  train.aperture.lens = lens;
  const double w = lens.diameter / n_segments;
  for (int s = 0; s < n_segments; ++s) {
    double lo = -0.5 * lens.diameter + s * w;
    train.aperture.segments.push_back({lo, lo + w, {1.0, 0.0}, s});
    train.phases.push_back(s * phase);
  }
  train.order = order;

  Pattern pat;
  pat.x = focal_grid(lens, half_width_spots, points_per_spot);
  pat.intensity = n_photon_pattern(train, pat.x);
  return pat;
}

SpotMetrics spot_metrics(const Pattern& pattern) {
  const auto& x = pattern.x;
  const auto& y = pattern.intensity;
  double lo = *std::min_element(y.begin(), y.end());
  double hi = *std::max_element(y.begin(), y.end());
  if (hi <= 0.0 || hi - lo <= 1e-12 * hi) throw std::invalid_argument("spot_metrics: flat pattern");
  std::size_t imax = std::max_element(y.begin(), y.end()) - y.begin();
  if (imax == 0 || imax + 1 == y.size())
    throw std::invalid_argument("spot_metrics: maximum on the grid boundary");

  SpotMetrics m;
  m.fwhm = level_width(x, y, 0.5);

  auto peaks = local_maxima(x, y);
  if (peaks.size() >= 2) {
    auto sorted = peaks;
    std::sort(sorted.begin(), sorted.end(), [](const Peak& a, const Peak& b) { return a.y > b.y; });
    m.lobe_spacing = std::abs(sorted[0].x - sorted[1].x);
    // highest secondary: strongest peak that is not the global one
    m.sidelobe_ratio = sorted[1].y / sorted[0].y;
  }
  return m;
}

SuppressResult suppress_sidelobes(const Lens& lens, int order, double half_width_spots,
                                  int points_per_spot) {
  SuppressResult result;
  result.before = two_segment_spot(lens, order, 0.0, 0.0, 0.0, half_width_spots, points_per_spot);
  auto metrics = spot_metrics(result.before);
  result.ratio_before = metrics.sidelobe_ratio;

  // side-lobe positions: strongest secondary maxima on each side of center
  auto peaks = local_maxima(result.before.x, result.before.intensity);
  double best_pos = 0.0, best_val = -1.0;
  for (const auto& p : peaks) {
    if (std::abs(p.x) < 0.25 * lens.spot_size()) continue;  // skip the main lobe
    if (p.y > best_val) {
      best_val = p.y;
      best_pos = std::abs(p.x);
    }
  }
  if (best_val <= 0.0) throw std::runtime_error("suppress_sidelobes: no side lobe found");

  // full-aperture fields centered on the two side lobes
  const auto& x = result.before.x;
  Segment full{-0.5 * lens.diameter, 0.5 * lens.diameter, {1.0, 0.0}, 0};
  const double k = two_pi / lens.wavelength;
  std::vector<cdouble> foci(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double ql = k * (x[i] - best_pos) / lens.focal_length;
    double qr = k * (x[i] + best_pos) / lens.focal_length;
    foci[i] = segment_field(full, ql) + segment_field(full, qr);
  }

  // base two-pulse N-photon amplitude
  Aperture ap;
  ap.lens = lens;
  ap.segments = {{-0.5 * lens.diameter, 0.0, {1.0, 0.0}, 0}, {0.0, 0.5 * lens.diameter, {1.0, 0.0}, 1}};
  auto e1 = focal_field(ap, x, 0);
  auto e2 = focal_field(ap, x, 1);
  std::vector<cdouble> base(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    cdouble p1{1.0, 0.0}, p2{1.0, 0.0};
    for (int n = 0; n < order; ++n) {
      p1 *= e1[i];
      p2 *= e2[i];
    }
    base[i] = p1 + p2;
  }
  // normalize the third pulse so an amplitude scan around 1 is meaningful:
  // its N-photon response at the side lobe should match the lobe amplitude
  double focus_scale = std::abs(segment_field(full, 0.0));
  double lobe_amp = std::sqrt(best_val);

  double best_metric = result.ratio_before;
  double best_a = 0.0, best_phi = 0.0;
  std::vector<double> trial(x.size());
  for (int ia = 0; ia <= 40; ++ia) {
    double a = 2.0 * ia / 40.0;  // third-pulse N-photon peak relative to the lobe
    double amp_scale = std::pow(a * lobe_amp, 1.0 / order) / focus_scale;
    for (int ip = 0; ip < 64; ++ip) {
      double phi = two_pi * ip / 64.0;
      cdouble rot = std::polar(1.0, phi);
      for (std::size_t i = 0; i < x.size(); ++i) {
        cdouble en{1.0, 0.0};
        cdouble f = amp_scale * foci[i];
        for (int n = 0; n < order; ++n) en *= f;
        trial[i] = std::norm(base[i] + rot * en);
      }
      Pattern pat{result.before.x, trial};
      SpotMetrics tm;
      try {
        tm = spot_metrics(pat);
      } catch (const std::exception&) {
        continue;
      }
      // only accept if the main lobe is still the central one
      std::size_t im = std::max_element(trial.begin(), trial.end()) - trial.begin();
      if (std::abs(x[im]) > 0.5 * lens.spot_size()) continue;
      if (tm.sidelobe_ratio < best_metric) {
        best_metric = tm.sidelobe_ratio;
        best_a = a;
        best_phi = phi;
        result.after = pat;
      }
    }
  }
  if (result.after.x.empty()) result.after = result.before;
  result.ratio_after = best_metric;
  result.best_amplitude = best_a;
  result.best_phase = best_phi;
  return result;
}

}  // namespace pairwise
