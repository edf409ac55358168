#include "pairwise/biphoton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pairwise/constants.hpp"
#include "pairwise/curve.hpp"

namespace pairwise {

bool JointSpectrum::symmetric(double tol) const {
  for (int j = 0; j < grid.n_points; ++j) {
    double scale = std::max(std::abs(g[j]), std::abs(g[grid.twin(j)]));
    if (std::abs(g[j] - g[grid.twin(j)]) > tol * std::max(scale, 1e-300)) return false;
  }
  return true;
}

JointSpectrum make_joint_spectrum(const SpectralGrid& grid, const EnvelopeFn& power_envelope) {
  JointSpectrum js;
  js.grid = grid;
  js.g.resize(grid.size());
  for (int j = 0; j < grid.n_points; ++j) {
    double p = power_envelope(grid.frequency(j));
    if (p < 0.0) throw std::invalid_argument("make_joint_spectrum: power envelope must be nonnegative");
    js.g[j] = std::sqrt(p);
  }
  return js;
}

double crossover_flux(double delta_dc_rad_s) {
  if (delta_dc_rad_s <= 0.0) throw std::invalid_argument("crossover_flux: bandwidth must be positive");
  return delta_dc_rad_s / two_pi;
}

double RateTerms::correlated_over_uncorrelated() const {
  return (coherent_quadratic + entangled_linear) / uncorrelated;
}

RateTerms sfg_rate_terms(const RateModel& model, const BandwidthSet& bands) {
  RateTerms t;
  t.uncorrelated = bands.delta_dc * bands.delta_uc * model.n * model.n;
  t.coherent_quadratic = bands.delta_dc * bands.delta_dc * model.n * model.n;
  t.entangled_linear = bands.delta_dc * bands.delta_dc * model.n;
  return t;
}

double coherent_incoherent_ratio(const RateModel& model) {
  if (model.n <= 0.0) throw std::invalid_argument("coherent_incoherent_ratio: undefined at n = 0");
  if (model.gamma_p + model.gamma_f <= 0.0)
    throw std::invalid_argument("coherent_incoherent_ratio: need positive line widths");
  return model.bandwidth / (model.gamma_p + model.gamma_f) * (model.n * model.n + model.n) /
         (model.n * model.n);
}

PowerDependence power_dependence(PowerMode mode, double n0, std::span<const double> factors) {
  if (n0 <= 0.0 || n0 > 0.2)
    throw std::invalid_argument("power_dependence: n0 must be in (0, 0.2] (below the crossover)");
  PowerDependence out;
  for (double a : factors) {
    if (a <= 0.0 || a > 1.0) throw std::invalid_argument("power_dependence: factors must be in (0, 1]");
    out.factor.push_back(a);
    if (mode == PowerMode::attenuate) {
      // loss hits either photon: pair survives with a^2, rate of the whole
      // (linear + quadratic) process drops as a^2
      out.density.push_back(a * n0);
      out.rate.push_back(a * a * (n0 + n0 * n0));
    } else {
      double n = a * n0;
      out.density.push_back(n);
      out.rate.push_back(n + n * n);
    }
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < out.factor.size(); ++i) {
    lx.push_back(std::log(out.factor[i]));
    ly.push_back(std::log(out.rate[i]));
  }
  out.global_slope = fit_slope(lx, ly);

  auto local = [&](std::size_t i, std::size_t j) {
    return (ly[j] - ly[i]) / (lx[j] - lx[i]);
  };
  // order by factor
  std::size_t imin = std::min_element(out.factor.begin(), out.factor.end()) - out.factor.begin();
  std::size_t imax = std::max_element(out.factor.begin(), out.factor.end()) - out.factor.begin();
  std::size_t imin2 = imin, imax2 = imax;
  double best_lo = 1e300, best_hi = 1e300;
  for (std::size_t i = 0; i < out.factor.size(); ++i) {
    if (i != imin && std::abs(lx[i] - lx[imin]) < best_lo) {
      best_lo = std::abs(lx[i] - lx[imin]);
      imin2 = i;
    }
    if (i != imax && std::abs(lx[i] - lx[imax]) < best_hi) {
      best_hi = std::abs(lx[i] - lx[imax]);
      imax2 = i;
    }
  }
  out.slope_low = local(imin, imin2);
  out.slope_high = local(imax2, imax);
  return out;
}

namespace {

// pair phase phi(d) + phi(-d) per signal mode
std::vector<double> signal_pair_phase(const SpectralGrid& grid, const PhaseMask* mask) {
  std::vector<double> out(grid.size() / 2, 0.0);
  if (!mask) return out;
  auto phi = mask_phase_profile(grid, *mask);
  for (int j = grid.signal_begin(); j < grid.n_points; ++j)
    out[j - grid.signal_begin()] = phi[j] + phi[grid.twin(j)];
  return out;
}

}  // namespace

WavefunctionCut two_photon_wavefunction(const JointSpectrum& js, double delta_p,
                                        std::span<const double> t_minus, const PhaseMask* mask) {
  if (delta_p <= 0.0) throw std::invalid_argument("two_photon_wavefunction: pump bandwidth must be positive");
  const auto& grid = js.grid;
  const double dw = grid.spacing();
  auto phase = signal_pair_phase(grid, mask);

  // signal-band power centroid (mask-independent; pure phases)
  double w_sum = 0.0, w_tot = 0.0;
  for (int j = grid.signal_begin(); j < grid.n_points; ++j) {
    double p = js.g[j] * js.g[j];
    w_sum += p * grid.detuning(j);
    w_tot += p;
  }
  if (w_tot <= 0.0) throw std::invalid_argument("two_photon_wavefunction: empty joint spectrum");
  const double d_c = w_sum / w_tot;

  WavefunctionCut cut;
  cut.carrier_detuning = d_c;
  // t_plus envelope exp(-dp^2 t^2 / 32) reaches 1/e at |t| = sqrt(32)/dp
  cut.t_plus_width = 2.0 * std::sqrt(32.0) / delta_p;
  cut.t_minus.assign(t_minus.begin(), t_minus.end());
  cut.F.resize(t_minus.size());
  for (std::size_t m = 0; m < t_minus.size(); ++m) {
    cdouble acc{0.0, 0.0};
    for (int j = grid.signal_begin(); j < grid.n_points; ++j) {
      double arg = phase[j - grid.signal_begin()] - (grid.detuning(j) - d_c) * t_minus[m];
      acc += js.g[j] * std::polar(1.0, arg);
    }
    cut.F[m] = acc * (dw / two_pi);
  }
  return cut;
}

void canonicalize_phase(std::span<cdouble> f) {
  double best = 0.0;
  cdouble at{1.0, 0.0};
  for (const auto& v : f) {
    if (std::abs(v) > best) {
      best = std::abs(v);
      at = v;
    }
  }
  if (best == 0.0) return;
  cdouble rot = std::conj(at) / best;
  for (auto& v : f) v *= rot;
}

ResponseTrace sfg_delay_response(const JointSpectrum& js, double delta_p, std::span<const double> taus,
                                 const PhaseMask* mask) {
  auto cut = two_photon_wavefunction(js, delta_p, taus, mask);
  ResponseTrace trace;
  trace.axis_label = "delay_s";
  trace.value_label = "g2_normalized";
  trace.axis = cut.t_minus;
  double peak = 0.0;
  for (const auto& v : cut.F) peak = std::max(peak, std::norm(v));
  if (peak <= 0.0) throw std::runtime_error("sfg_delay_response: empty response");
  for (const auto& v : cut.F) trace.values.push_back(std::norm(v) / peak);
  return trace;
}

namespace {

// R(tau) before normalization
double mz_raw(const JointSpectrum& js, double tau) {
  const auto& grid = js.grid;
  const double w_o = 0.5 * grid.pump_freq;
  double f0 = 0.0, env = 0.0;
  for (int j = 0; j < grid.n_points; ++j) {
    f0 += js.g[j];
    env += js.g[j] * std::cos(grid.detuning(j) * tau);
  }
  double v = std::cos(w_o * tau) * f0 + env;
  return v * v;
}

}  // namespace

ResponseTrace mz_interference(const JointSpectrum& js, std::span<const double> taus) {
  if (!js.symmetric(1e-9))
    throw std::invalid_argument("mz_interference: joint spectrum must be symmetric about w_p/2");
  ResponseTrace trace;
  trace.axis_label = "delay_s";
  trace.value_label = "coincidence_normalized";
  const double r0 = mz_raw(js, 0.0);
  if (r0 <= 0.0) throw std::runtime_error("mz_interference: empty spectrum");
  for (double tau : taus) {
    trace.axis.push_back(tau);
    trace.values.push_back(mz_raw(js, tau) / r0);
  }
  return trace;
}

double one_photon_visibility(const JointSpectrum& js, double tau) {
  const auto& grid = js.grid;
  cdouble corr{0.0, 0.0};
  double total = 0.0;
  for (int j = 0; j < grid.n_points; ++j) {
    double p = js.g[j] * js.g[j];
    corr += p * std::polar(1.0, grid.detuning(j) * tau);
    total += p;
  }
  return std::abs(corr) / total;
}

double mz_visibility(const JointSpectrum& js, double tau, int samples) {
  const double w_o = 0.5 * js.grid.pump_freq;
  const double period = two_pi / w_o;  // one fringe period of cos(w_o tau)
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < samples; ++i) {
    double v = mz_raw(js, tau + period * i / samples);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return (hi - lo) / (hi + lo);
}

CoincidenceReport coincidence_condition(const BandwidthSet& bands, bool entangled) {
  CoincidenceReport rep;
  rep.input_band_ok = bands.delta_lf >= bands.delta_dc;
  rep.acceptance_ok = entangled ? bands.delta_uc > bands.delta_p : bands.delta_uc >= 2.0 * bands.delta_dc;
  rep.ok = rep.input_band_ok && rep.acceptance_ok;
  std::ostringstream ss;
  ss << (entangled ? "entangled pairs (n << 1): " : "classical fields: ");
  ss << "input band " << (rep.input_band_ok ? "ok" : "too narrow") << ", acceptance "
     << (rep.acceptance_ok ? "ok" : "too narrow");
  rep.detail = ss.str();
  return rep;
}

}  // namespace pairwise
