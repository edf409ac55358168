#pragma once

#include <span>
#include <vector>

#include "pairwise/field.hpp"  // WidthKind

namespace pairwise {

struct Peak {
  double x = 0.0;
  double y = 0.0;
};

// Full width of y(x) around its global maximum at the given fraction of the
// peak value, with linear interpolation between samples. Throws when the
// curve never drops below the level on either side.
double level_width(std::span<const double> x, std::span<const double> y, double level_fraction);

inline double width(std::span<const double> x, std::span<const double> y, WidthKind kind) {
  return level_width(x, y, kind == WidthKind::fwhm ? 0.5 : 0.36787944117144233);
}

// Interior local maxima, parabolically refined. Plateaus and endpoints are
// ignored.
std::vector<Peak> local_maxima(std::span<const double> x, std::span<const double> y);

// Parabolic refinement of the sample maximum nearest index i.
Peak refine_peak(std::span<const double> x, std::span<const double> y, std::size_t i);

// least-squares slope of y against x
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace pairwise
