#pragma once

#include <span>
#include <string>

#include "pairwise/field.hpp"
#include "pairwise/mask.hpp"
#include "pairwise/response.hpp"

namespace pairwise {

struct BandwidthSet {
  double delta_dc = 0.0;  // down-converted bandwidth, rad/s
  double delta_uc = 0.0;  // up-conversion acceptance, rad/s
  double delta_p = 0.0;   // pump bandwidth, rad/s
  double delta_lf = 0.0;  // phase-matched input bandwidth, rad/s
};

struct RateModel {
  double n = 0.0;          // mean spectral photon density
  double bandwidth = 0.0;  // B, rad/s (down-converted bandwidth alias)
  double gamma_p = 0.0;    // rad/s
  double gamma_f = 0.0;    // rad/s
};

// Joint pair spectrum over a grid: g is the pair amplitude density, assumed
// symmetric about w_p/2 for collinear type-I (enforced when required).
// Spectral filters are applied as phase masks: a pair with signal detuning d
// accumulates phi(d) + phi(-d).
struct JointSpectrum {
  SpectralGrid grid;
  std::vector<double> g;  // amplitude, >= 0

  bool symmetric(double tol = 1e-12) const;
};

JointSpectrum make_joint_spectrum(const SpectralGrid& grid, const EnvelopeFn& power_envelope);

// Maximal flux at which the light is still distinct pairs: one photon per
// spectral mode, i.e. the bandwidth expressed in ordinary frequency.
double crossover_flux(double delta_dc_rad_s);

// Rate pieces of narrowband SFG with down-converted light, up to one shared
// constant: (uncorrelated, coherent-quadratic, entangled-linear) =
// (D_dc * d_uc * n^2, D_dc^2 * n^2, D_dc^2 * n).
struct RateTerms {
  double uncorrelated = 0.0;
  double coherent_quadratic = 0.0;
  double entangled_linear = 0.0;

  double correlated_over_uncorrelated() const;
};
RateTerms sfg_rate_terms(const RateModel& model, const BandwidthSet& bands);

// ratio of coherent to incoherent TPA, [B/(g_p+g_f)] (n^2+n)/n^2
double coherent_incoherent_ratio(const RateModel& model);

enum class PowerMode { attenuate, pump_scale };

// Flux dependence of the SFG rate. Attenuation by a hits both photons of
// every pair: rate ~ a^2 (n0 + n0^2). Pump scaling changes the pair rate
// itself: rate ~ (kn0) + (kn0)^2, local log-log slope 1 + n/(1+n).
struct PowerDependence {
  std::vector<double> factor;
  std::vector<double> density;  // resulting n
  std::vector<double> rate;
  double global_slope = 0.0;  // least squares on log-log
  double slope_low = 0.0;     // local slope at the lowest point
  double slope_high = 0.0;    // local slope at the highest point
};
PowerDependence power_dependence(PowerMode mode, double n0, std::span<const double> factors);

// Pair-sum amplitude vs t_minus = t_s - t_i with the signal labeled as the
// upper-frequency photon:
//   F(t) = (dw/2pi) sum_{d>0} g(d) e^{i[phi(d)+phi(-d)]} e^{-i(d - d_c) t},
// referenced to the signal-band power centroid d_c (carrier removed). The
// t_plus factor is the analytic pump-limited gaussian exp(-dp^2 t_+^2 / 32)
// whose 1/e full width is returned alongside.
struct WavefunctionCut {
  std::vector<double> t_minus;
  std::vector<cdouble> F;
  double t_plus_width = 0.0;  // 1/e full width of the t_+ envelope, s
  double carrier_detuning = 0.0;
};
WavefunctionCut two_photon_wavefunction(const JointSpectrum& js, double delta_p,
                                        std::span<const double> t_minus,
                                        const PhaseMask* mask = nullptr);

// Rotate so the strongest |F| lobe is real positive; the global phase of the
// pair amplitude is observable only against the pump reference, so reported
// lobe signs use this convention.
void canonicalize_phase(std::span<cdouble> f);

// G2(tau) = |F(tau)|^2 normalized to its maximum: what a narrowband SFG
// coincidence detector reads against the signal-idler delay.
ResponseTrace sfg_delay_response(const JointSpectrum& js, double delta_p, std::span<const double> taus,
                                 const PhaseMask* mask = nullptr);

// Two-photon Mach-Zehnder fringes
//   R(tau) = | integral g(w) { cos(w_o tau) + cos[(w - w_o) tau] } dw |^2
// normalized to R(0); requires g symmetric about w_o = w_p/2.
ResponseTrace mz_interference(const JointSpectrum& js, std::span<const double> taus);

// visibility of the one-photon (field) interference at the same delay,
// |FT of g^2|(tau) / its tau = 0 value
double one_photon_visibility(const JointSpectrum& js, double tau);

// fringe visibility (max-min)/(max+min) of R over one w_p/2 period at tau
double mz_visibility(const JointSpectrum& js, double tau, int samples = 128);

struct CoincidenceReport {
  bool ok = false;
  bool input_band_ok = false;
  bool acceptance_ok = false;
  std::string detail;
};

// Classical fields need D_lf >= D and d_uc >= 2 D; entangled pairs at n << 1
// relax the acceptance condition to d_uc > d_p.
CoincidenceReport coincidence_condition(const BandwidthSet& bands, bool entangled);

}  // namespace pairwise
