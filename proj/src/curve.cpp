#include "pairwise/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pairwise {

double level_width(std::span<const double> x, std::span<const double> y, double level_fraction) {
  if (x.size() != y.size() || x.size() < 3) throw std::invalid_argument("level_width: need matching curves, >= 3 points");
  std::size_t imax = 0;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] > y[imax]) imax = i;
  const double level = level_fraction * y[imax];

  // walk right
  std::size_t r = imax;
  while (r + 1 < y.size() && y[r + 1] >= level) ++r;
  if (r + 1 >= y.size()) throw std::runtime_error("level_width: curve does not drop below level on the right");
  double xr = x[r] + (x[r + 1] - x[r]) * (y[r] - level) / (y[r] - y[r + 1]);

  // walk left
  std::size_t l = imax;
  while (l > 0 && y[l - 1] >= level) --l;
  if (l == 0 && y[0] >= level) throw std::runtime_error("level_width: curve does not drop below level on the left");
  double xl = x[l] - (x[l] - x[l - 1]) * (y[l] - level) / (y[l] - y[l - 1]);

  return xr - xl;
}

Peak refine_peak(std::span<const double> x, std::span<const double> y, std::size_t i) {
  if (i == 0 || i + 1 >= y.size()) return {x[i], y[i]};
  double a = y[i - 1], b = y[i], c = y[i + 1];
  double denom = a - 2.0 * b + c;
  if (denom >= 0.0) return {x[i], y[i]};  // not locally concave
  double shift = 0.5 * (a - c) / denom;
  double h = x[i + 1] - x[i];
  return {x[i] + shift * h, b - 0.25 * (a - c) * shift};
}

std::vector<Peak> local_maxima(std::span<const double> x, std::span<const double> y) {
  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] > y[i - 1] && y[i] > y[i + 1]) peaks.push_back(refine_peak(x, y, i));
  return peaks;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope: need >= 2 matching points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(x.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

}  // namespace pairwise
