#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pairwise {

// Refractive-index formulas evaluated with the wavelength in micrometers.
//   constant_n:       n = c0
//   polynomial:       n = c0 + c1 L + c2 L^2 + ...
//   two_pole:         n^2 = c0 + c1/(L^2 - c2) + c3/(L^2 - c4)
//   one_pole_lambda2: n^2 = c0 + c1/(L^2 - c2) - c3 L^2
enum class SellmeierForm { constant_n, polynomial, two_pole, one_pole_lambda2 };

// Dispersion data is shipped, not hardcoded: every model must carry a
// provenance string (literature citation or an explicit extrapolation note)
// and the loader refuses files without one.
struct CrystalModel {
  std::string name;
  SellmeierForm form = SellmeierForm::constant_n;
  std::vector<double> coeff;
  double valid_lo = 0.0;  // m
  double valid_hi = 0.0;  // m
  std::string provenance;

  double length = 0.0;                      // m
  std::optional<double> qpm_period;         // m
  double chi = 1.0;                         // nonlinear coupling, consistent units
  double loss_T = 0.0;                      // round-trip cavity loss
};

double refractive_index(const CrystalModel& c, double lambda_m);
// numerical d2n/dlambda2 (central differences)
double index_second_derivative(const CrystalModel& c, double lambda_m);

// Collinear type-I phase mismatch for signal lambda_s and pump lambda_p,
// 1/lambda_i = 1/lambda_p - 1/lambda_s:
//   dk = 2 pi [n_p/l_p - n_s/l_s - n_i/l_i] - 2 pi / qpm_period
double delta_k(const CrystalModel& c, double lambda_signal_m, double lambda_pump_m);

// QPM period that zeroes delta_k at degeneracy (lambda_s = 2 lambda_p).
double solve_qpm_period(const CrystalModel& c, double lambda_pump_m);

struct MismatchCurve {
  std::vector<double> wavelength;  // m
  std::vector<double> delta_k;     // rad/m
};
MismatchCurve mismatch_curve(const CrystalModel& c, double lambda_pump_m, std::span<const double> lambda_signal_m);

// Band criteria on |dk| l / 2:
//   sinc_first_zero : <= pi
//   sinc_half_max   : sinc^2 >= 1/2
//   threshold_flat  : sinc^2 >= 1/flat_ratio (threshold within flat_ratio of
//                     its minimum; matches the "constant to 15%" reading for
//                     flat_ratio = 1.15)
enum class BandCriterion { sinc_first_zero, sinc_half_max, threshold_flat };

struct Band {
  double lo = 0.0;  // m, signal wavelength
  double hi = 0.0;
  double width() const { return hi - lo; }
};

// Contiguous signal-wavelength interval around degeneracy where the criterion
// holds, clipped to the Sellmeier validity range (of signal, idler and
// pump). Throws when degeneracy itself is not phase matched.
Band pm_band(const CrystalModel& c, double lambda_pump_m, BandCriterion criterion,
             double flat_ratio = 1.15);

// Pump wavelength that puts degeneracy on the zero of d2n/dlambda2, found by
// bisection on the numerical second derivative. Throws when the derivative
// does not change sign inside the validity range.
double find_zero_dispersion_pump(const CrystalModel& c);

// Diagnostic for the zero-dispersion pump: the fitted quadratic coefficient
// of dk(detuning) about degeneracy at the candidate pump, and at a reference
// pump displaced by a tenth of the validity span.
struct ZeroDispersionCheck {
  double pump = 0.0;
  double quad_coeff = 0.0;
  double quad_coeff_ref = 0.0;
  double ratio() const;
};
ZeroDispersionCheck check_zero_dispersion(const CrystalModel& c, double lambda_pump_m);

// Relative threshold pump intensity vs signal wavelength:
//   I_th(l) = [T^2/(4 chi^2 l^2)] / sinc^2(dk l / 2), normalized to its
// minimum over the requested wavelengths.
struct ThresholdCurve {
  std::vector<double> wavelength;  // m
  std::vector<double> relative_intensity;
  double absolute_minimum = 0.0;  // T^2/(4 chi^2 l^2)
};
ThresholdCurve threshold_curve(const CrystalModel& c, double lambda_pump_m,
                               std::span<const double> lambda_signal_m);

// Structured-text crystal files; rejects files without a provenance entry.
CrystalModel load_crystal(const std::string& path);

}  // namespace pairwise
