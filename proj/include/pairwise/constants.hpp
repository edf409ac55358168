#pragma once

namespace pairwise {

inline constexpr double c_light = 2.99792458e8;  // m/s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline double omega_from_wavelength(double lambda_m) { return two_pi * c_light / lambda_m; }
inline double wavelength_from_omega(double omega_rad_s) { return two_pi * c_light / omega_rad_s; }

// bandwidth conversion near a center wavelength: dw = 2 pi c dl / l^2
inline double omega_width_from_wavelength_width(double dlambda_m, double lambda0_m) {
  return two_pi * c_light * dlambda_m / (lambda0_m * lambda0_m);
}
inline double wavelength_width_from_omega_width(double domega, double lambda0_m) {
  return domega * lambda0_m * lambda0_m / (two_pi * c_light);
}

}  // namespace pairwise
