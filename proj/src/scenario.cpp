#include "pairwise/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "pairwise/biphoton.hpp"
#include "pairwise/constants.hpp"
#include "pairwise/crystal.hpp"
#include "pairwise/curve.hpp"
#include "pairwise/litho.hpp"
#include "pairwise/mask.hpp"
#include "pairwise/ocdma.hpp"
#include "pairwise/opo.hpp"
#include "pairwise/response.hpp"
#include "pairwise/table.hpp"
#include "pairwise/twm.hpp"

namespace pairwise {

namespace {

namespace fs = std::filesystem;

// typed parameter lookup over the key=value overrides; every override must
// name a parameter the scenario actually has
class Params {
 public:
  Params(const std::map<std::string, std::string>& overrides) : overrides_(overrides) {}

  double get(const std::string& key, double fallback) {
    auto it = fetch(key);
    if (it == overrides_.end()) {
      resolved_[key] = format_double(fallback);
      return fallback;
    }
    try {
      double v = std::stod(it->second);
      resolved_[key] = format_double(v);
      return v;
    } catch (const std::exception&) {
      throw BadParamsError("parameter '" + key + "' is not a number: " + it->second);
    }
  }

  int get_int(const std::string& key, int fallback) {
    double v = get(key, fallback);
    if (v != std::floor(v)) throw BadParamsError("parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
  }

  std::string get_string(const std::string& key, const std::string& fallback) {
    auto it = fetch(key);
    std::string v = it == overrides_.end() ? fallback : it->second;
    resolved_[key] = v;
    return v;
  }

  void finish() const {
    for (const auto& [key, value] : overrides_)
      if (!known_.count(key)) throw BadParamsError("unknown parameter '" + key + "'");
  }

  const std::map<std::string, std::string>& resolved() const { return resolved_; }

 private:
  std::map<std::string, std::string>::const_iterator fetch(const std::string& key) {
    known_.insert(key);
    return overrides_.find(key);
  }

  const std::map<std::string, std::string>& overrides_;
  std::map<std::string, std::string> resolved_;
  std::set<std::string> known_;
};

struct Emitter {
  fs::path dir;
  std::vector<std::string> files;

  std::string table(const std::string& name, const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& data) {
    std::string path = (dir / name).string();
    try {
      write_table(path, columns, data);
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
    files.push_back(name);
    return path;
  }

  void summary(const std::string& name, const std::vector<std::pair<std::string, double>>& rows) {
    std::string path = (dir / name).string();
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path);
    out << "# quantity value\n";
    for (const auto& [k, v] : rows) out << k << "\t" << format_double(v) << "\n";
    if (!out) throw IoError("write failed for " + path);
    files.push_back(name);
  }

  void text(const std::string& name, const std::string& content) {
    std::string path = (dir / name).string();
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path);
    out << content;
    if (!out) throw IoError("write failed for " + path);
    files.push_back(name);
  }
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / double(n - 1);
  return v;
}

std::vector<double> trace_errbars(const ResponseTrace& t) {
  return t.stderr_.empty() ? std::vector<double>(t.axis.size(), 0.0) : t.stderr_;
}

void emit_trace(Emitter& em, const std::string& name, const ResponseTrace& t) {
  em.table(name, {t.axis_label, t.value_label, "stderr", "n"},
           {t.axis, t.values, trace_errbars(t),
            std::vector<double>(t.axis.size(), double(t.n_realizations))});
}

// ---------------------------------------------------------------- scenarios

void run_tpa_delay_scan(Params& p, Emitter& em, std::uint64_t seed) {
  const double pump_nm = p.get("pump_nm", 516.65);
  const double band_nm = p.get("band_nm", 100.0);  // 1/e full width of the signal band
  const int n_points = p.get_int("n_points", 4096);
  const double tau_max_fs = p.get("tau_max_fs", 150.0);
  const int n_tau = p.get_int("n_tau", 301);
  p.finish();

  const double pump = omega_from_wavelength(pump_nm * 1e-9);
  const double degenerate_nm = 2.0 * pump_nm;
  const double band_w = omega_width_from_wavelength_width(band_nm * 1e-9, degenerate_nm * 1e-9);
  // combined signal+idler spectrum, each half about band_w wide
  const double width = 2.0 * band_w;
  SpectralGrid grid = make_grid(pump, 1.6 * width, n_points);
  auto pair = sample_down_converted(grid, gaussian_envelope(0.5 * pump, width), seed);

  auto taus = linspace(-tau_max_fs * 1e-15, tau_max_fs * 1e-15, n_tau);
  auto trace = delay_scan(pair, taus);
  emit_trace(em, "delay_trace.txt", trace);

  std::string field_path = (em.dir / "pair_field.txt").string();
  try {
    write_field(field_path, pair.field);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  em.files.push_back("pair_field.txt");

  double peak = *std::max_element(trace.values.begin(), trace.values.end());
  double tail = 0.0;
  int n_tail = 0;
  for (std::size_t i = 0; i < trace.axis.size(); ++i)
    if (std::abs(trace.axis[i]) > 0.8 * tau_max_fs * 1e-15) {
      tail += trace.values[i];
      ++n_tail;
    }
  auto field = make_field(grid, gaussian_envelope(0.5 * pump, width));
  em.summary("summary.txt", {
                                {"peak_response", peak},
                                {"tail_mean_response", tail / std::max(n_tail, 1)},
                                {"equivalent_duration_s", equivalent_pulse_duration(grid, field.envelope)},
                            });
}

void run_tpa_pump_scan(Params& p, Emitter& em, std::uint64_t) {
  const double center_nm = p.get("center_nm", 516.65);
  const double gamma_p_nm = p.get("gamma_p_nm", 0.04);
  const double gamma_f_nm = p.get("gamma_f_nm", 0.08);
  const double scan_nm = p.get("scan_nm", 0.4);
  const int n = p.get_int("n_detunings", 801);
  const double background = p.get("background_ratio", 0.02);
  p.finish();

  const double c0 = center_nm * 1e-9;
  LineModel line{omega_width_from_wavelength_width(gamma_p_nm * 1e-9, c0),
                 omega_width_from_wavelength_width(gamma_f_nm * 1e-9, c0)};
  auto detunings = linspace(-omega_width_from_wavelength_width(scan_nm * 1e-9, c0) / 2.0,
                            omega_width_from_wavelength_width(scan_nm * 1e-9, c0) / 2.0, n);
  auto trace = pump_detuning_scan(line, detunings, background);
  emit_trace(em, "pump_scan.txt", trace);

  std::vector<double> net(trace.values.size());
  for (std::size_t i = 0; i < net.size(); ++i) net[i] = trace.values[i] - background;
  double w_e = width(trace.axis, net, WidthKind::one_over_e_full);
  double w_f = width(trace.axis, net, WidthKind::fwhm);
  em.summary("summary.txt",
             {
                 {"width_one_over_e_nm", wavelength_width_from_omega_width(w_e, c0) * 1e9},
                 {"width_fwhm_nm", wavelength_width_from_omega_width(w_f, c0) * 1e9},
                 {"expected_sum_nm", gamma_p_nm + gamma_f_nm},
             });
}

void run_coherent_control(Params& p, Emitter& em, std::uint64_t seed) {
  const double pump_nm = p.get("pump_nm", 532.0);
  const int n_points = p.get_int("n_points", 2048);
  const int blocks_per_half = p.get_int("blocks_per_half", 8);
  const double max_amplitude = p.get("max_amplitude_rad", 6.0 * pi);
  const int n_amp = p.get_int("n_amplitudes", 301);
  p.finish();

  const double pump = omega_from_wavelength(pump_nm * 1e-9);
  const double half_span = 0.02 * pump;
  SpectralGrid grid = make_grid(pump, half_span, n_points);
  auto pair = sample_down_converted(grid, flat_envelope(1.0), seed);

  const double period = 2.0 * half_span / blocks_per_half;
  auto amps = linspace(0.0, max_amplitude, n_amp);
  auto trace = control_transfer(pair, amps, period);

  std::vector<double> predicted(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    double c = std::cos(0.5 * amps[i]);
    predicted[i] = c * c;
  }
  em.table("control_transfer.txt", {"mask_amplitude_rad", "normalized_peak", "cos2_half"},
           {trace.axis, trace.values, predicted});
}

void run_ocdma_ber(Params& p, Emitter& em, std::uint64_t seed) {
  const double ratio = p.get("bandwidth_ratio", 512.0);  // Delta/delta
  const int frames = p.get_int("frames", 400);
  std::string klist = p.get_string("channels", "2,4,8,16");
  std::string which = p.get_string("modulation", "both");
  p.finish();
  if (which != "both" && which != "ook" && which != "psk")
    throw BadParamsError("modulation must be both, ook or psk");

  std::vector<int> ks;
  std::stringstream ss(klist);
  std::string tok;
  while (std::getline(ss, tok, ',')) ks.push_back(std::stoi(tok));
  if (ks.empty()) throw BadParamsError("channels list is empty");

  const double delta = two_pi * 1e9;  // 1 GHz data bandwidth; only the ratio matters
  LinkBudget budget{ratio * delta, delta, 10.0, 1};

  for (auto modulation : {Modulation::ook, Modulation::psk}) {
    bool ook = modulation == Modulation::ook;
    if (which != "both" && which != (ook ? "ook" : "psk")) continue;
    std::vector<double> col_k, col_ber, col_lo, col_hi, col_frames, col_err, col_bits;
    for (int k : ks) {
      budget.n_channels = k;
      auto r = ber_monte_carlo(budget, modulation, frames, seed);
      col_k.push_back(k);
      col_ber.push_back(r.ber);
      col_lo.push_back(r.ci_low);
      col_hi.push_back(r.ci_high);
      col_frames.push_back(double(r.frames));
      col_err.push_back(double(r.errors));
      col_bits.push_back(double(r.bits));
    }
    em.table(ook ? "ber_ook.txt" : "ber_psk.txt",
             {"channels", "ber", "ci_low", "ci_high", "frames", "errors", "bits"},
             {col_k, col_ber, col_lo, col_hi, col_frames, col_err, col_bits});
  }
  em.summary("summary.txt", {{"capacity_ratio4000_snr10", capacity(4000.0, 1.0, 10.0)}});
}

void run_ocdma_dispersion(Params& p, Emitter& em, std::uint64_t seed) {
  const double pump_nm = p.get("pump_nm", 532.0);
  const int n_points = p.get_int("n_points", 2048);
  const int n_coeff = p.get_int("n_coefficients", 41);
  const double max_phase = p.get("max_edge_phase_rad", 30.0);
  p.finish();

  const double pump = omega_from_wavelength(pump_nm * 1e-9);
  const double half_span = 0.02 * pump;
  SpectralGrid grid = make_grid(pump, half_span, n_points);
  auto pair = sample_down_converted(grid, gaussian_envelope(0.5 * pump, half_span), seed);

  for (int order : {2, 3}) {
    double cmax = max_phase / std::pow(half_span, order);
    auto coeffs = linspace(-cmax, cmax, n_coeff);
    auto trace = dispersion_sensitivity(pair, order, coeffs);
    em.table("dispersion_order" + std::to_string(order) + ".txt", {trace.axis_label, trace.value_label},
             {trace.axis, trace.values});
  }
}

void run_opo_efficiency(Params& p, Emitter& em, std::uint64_t seed) {
  const double gamma1 = p.get("gamma1_s2", 3e-26);
  const int budget_pairs = p.get_int("budget_pairs", 2);
  p.finish();

  std::vector<double> ns(301);
  for (int i = 0; i < 301; ++i) ns[i] = 1.0 + 15.0 * i / 300.0;
  std::vector<double> gammas{gamma1, 2.0 * gamma1};
  auto table = efficiency_curve(ns, gammas, budget_pairs, seed);
  em.table("efficiency.txt", {"pump_ratio", "eta_narrow", "eta_ideal", "eta_practical"},
           {table.pump_ratio, table.narrow, table.ideal, table.practical});

  std::size_t amax = std::max_element(table.ideal.begin(), table.ideal.end()) - table.ideal.begin();
  em.summary("summary.txt", {
                                {"eta_n4_narrow_single_medium", efficiency(4.0, 1.0)},
                                {"eta_n4_ideal", efficiency(4.0, 0.0)},
                                {"argmax_pump_ratio", table.pump_ratio[amax]},
                            });
}

void run_opo_spectrum(Params& p, Emitter& em, std::uint64_t seed) {
  const double gamma1 = p.get("gamma1_s2", 3e-26);
  const double band_hi = p.get("band_hi_rad_s", 1.6e13);
  p.finish();

  struct Case {
    std::string name;
    std::vector<double> gammas;
    int pairs;
  };
  std::vector<Case> cases{
      {"single_gamma_2pairs", {gamma1}, 2},
      {"two_gammas_2pairs", {gamma1, 2.0 * gamma1}, 2},
      {"two_gammas_4pairs", {gamma1, 2.0 * gamma1}, 4},
  };
  std::vector<std::pair<std::string, double>> taxes;
  for (const auto& c : cases) {
    auto result = optimize_spectrum(c.gammas, c.pairs, 1.0, seed, 0.05 * band_hi, band_hi);
    std::vector<double> d, pw;
    for (const auto& lp : result.spectrum.pairs) {
      d.push_back(-lp.detuning);
      pw.push_back(0.5 * lp.power);
      d.push_back(lp.detuning);
      pw.push_back(0.5 * lp.power);
    }
    // sorted line listing (two lines per pair)
    std::vector<std::size_t> idx(d.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    std::vector<double> ds, ps;
    for (auto i : idx) {
      ds.push_back(d[i]);
      ps.push_back(pw[i]);
    }
    em.table("spectrum_" + c.name + ".txt", {"detuning_rad_s", "power"}, {ds, ps});
    em.table("history_" + c.name + ".txt", {"iteration", "best_tax"},
             {linspace(0, double(result.history.size() - 1), int(result.history.size())), result.history});
    taxes.emplace_back("normalized_tax_" + c.name, result.normalized_tax);
  }
  em.summary("summary.txt", taxes);
}

void run_twm_phase_lock(Params& p, Emitter& em, std::uint64_t) {
  const double seed_amp = p.get("seed_amplitude", 1e-8);
  const double pump_amp = p.get("pump_amplitude", 1.0);
  const double kappa = p.get("kappa", 1.0);
  const double z_end = p.get("z_end", 16.0);
  const double rel_tol = p.get("rel_tol", 1e-10);
  p.finish();

  TwmState init{seed_amp * std::polar(1.0, 0.3), seed_amp * std::polar(1.0, -0.8), pump_amp};
  auto traj = integrate_twm(init, kappa, z_end, rel_tol);
  auto dtheta = phase_sum(traj);

  std::vector<double> z, rs, is, ri, ii, rp, ip;
  for (std::size_t i = 0; i < traj.z.size(); ++i) {
    z.push_back(traj.z[i]);
    rs.push_back(traj.states[i].a_s.real());
    is.push_back(traj.states[i].a_s.imag());
    ri.push_back(traj.states[i].a_i.real());
    ii.push_back(traj.states[i].a_i.imag());
    rp.push_back(traj.states[i].a_p.real());
    ip.push_back(traj.states[i].a_p.imag());
  }
  em.table("trajectory.txt", {"z", "re_As", "im_As", "re_Ai", "im_Ai", "re_Ap", "im_Ap"},
           {z, rs, is, ri, ii, rp, ip});
  em.table("phase_sum.txt", {"z", "dtheta_rad"}, {z, dtheta});

  auto drift = conserved_drift(traj);
  em.summary("summary.txt", {
                                {"dtheta_final_rad", dtheta.back()},
                                {"drift_manley_rowe_si", drift.manley_rowe_si},
                                {"drift_manley_rowe_sp", drift.manley_rowe_sp},
                                {"drift_c1", drift.c1},
                            });
}

void run_phasematch_threshold(Params& p, Emitter& em, std::uint64_t) {
  const std::string dir = p.get_string("crystal_dir", "data/crystals");
  const double ktp_pump_nm = p.get("ktp_pump_nm", 532.0);
  p.finish();

  // quadratic regime: periodically poled KTP near degeneracy
  auto ktp = load_crystal(dir + "/ppktp_z_kato2002.crystal");
  const double ktp_pump = ktp_pump_nm * 1e-9;
  ktp.qpm_period = solve_qpm_period(ktp, ktp_pump);
  auto band_k = pm_band(ktp, ktp_pump, BandCriterion::sinc_first_zero);
  auto flat_k = pm_band(ktp, ktp_pump, BandCriterion::threshold_flat, 1.15);

  // quartic regime: BBO pumped at the zero-dispersion point
  auto bbo = load_crystal(dir + "/bbo_o_kato1986_ir_extrapolated.crystal");
  const double bbo_pump = find_zero_dispersion_pump(bbo);
  bbo.qpm_period = solve_qpm_period(bbo, bbo_pump);
  auto band_b = pm_band(bbo, bbo_pump, BandCriterion::sinc_first_zero);
  auto flat_b = pm_band(bbo, bbo_pump, BandCriterion::threshold_flat, 1.15);

  auto emit_crystal = [&](const std::string& tag, const CrystalModel& c, double pump, const Band& band) {
    auto ls = linspace(band.lo, band.hi, 801);
    auto mc = mismatch_curve(c, pump, ls);
    auto tc = threshold_curve(c, pump, ls);
    em.table(tag + "_mismatch.txt", {"signal_wavelength_m", "delta_k_rad_m"}, {mc.wavelength, mc.delta_k});
    em.table(tag + "_threshold.txt", {"signal_wavelength_m", "relative_threshold"},
             {tc.wavelength, tc.relative_intensity});
  };
  emit_crystal("ktp532", ktp, ktp_pump, band_k);
  emit_crystal("bbo_zdp", bbo, bbo_pump, band_b);

  em.summary("summary.txt",
             {
                 {"ktp_first_zero_band_nm", band_k.width() * 1e9},
                 {"ktp_flat_band_nm", flat_k.width() * 1e9},
                 {"bbo_pump_nm", bbo_pump * 1e9},
                 {"bbo_first_zero_band_nm", band_b.width() * 1e9},
                 {"bbo_flat_band_nm", flat_b.width() * 1e9},
                 {"threshold_T2_scaling", threshold_intensity(2.0, 1.0, 1.0) / threshold_intensity(1.0, 1.0, 1.0)},
                 {"threshold_l2_scaling", threshold_intensity(1.0, 1.0, 2.0) / threshold_intensity(1.0, 1.0, 1.0)},
             });
}

void run_litho_spot(Params& p, Emitter& em, std::uint64_t) {
  const double wavelength_nm = p.get("wavelength_nm", 778.0);
  const double focal_mm = p.get("focal_mm", 100.0);
  const double diameter_mm = p.get("diameter_mm", 2.0);
  const int pts = p.get_int("points_per_spot", 64);
  // optional custom two-segment geometry (segment intervals, order, phase)
  const double custom_sep_mm = p.get("custom_separation_mm", 0.0);
  const double custom_width_mm = p.get("custom_width_mm", 0.0);
  const int custom_order = p.get_int("custom_order", 2);
  const double custom_phase = p.get("custom_phase_rad", pi);
  p.finish();

  Lens lens{focal_mm * 1e-3, wavelength_nm * 1e-9, diameter_mm * 1e-3};

  if (custom_sep_mm > 0.0 && custom_width_mm > 0.0) {
    auto custom = two_segment_spot(lens, custom_order, custom_phase, custom_sep_mm * 1e-3,
                                   custom_width_mm * 1e-3, 12.0, pts);
    em.table("custom_pattern.txt", {"x_m", "intensity"}, {custom.x, custom.intensity});
  }

  std::vector<std::pair<std::string, double>> rows;
  for (int order : {1, 2, 4}) {
    auto bright = two_segment_spot(lens, order, 0.0, 0.0, 0.0, 12.0, pts);
    auto dark = two_segment_spot(lens, order, pi, 0.0, 0.0, 12.0, pts);
    em.table("bright_n" + std::to_string(order) + ".txt", {"x_m", "intensity"},
             {bright.x, bright.intensity});
    em.table("dark_n" + std::to_string(order) + ".txt", {"x_m", "intensity"}, {dark.x, dark.intensity});
    auto mb = spot_metrics(bright);
    rows.emplace_back("fwhm_bright_n" + std::to_string(order) + "_m", mb.fwhm);
    rows.emplace_back("sidelobe_ratio_n" + std::to_string(order), mb.sidelobe_ratio);
  }

  auto sup = suppress_sidelobes(lens, 2, 12.0, pts);
  em.table("suppressed_n2.txt", {"x_m", "intensity"}, {sup.after.x, sup.after.intensity});
  rows.emplace_back("sidelobe_before", sup.ratio_before);
  rows.emplace_back("sidelobe_after", sup.ratio_after);
  rows.emplace_back("suppression_factor", sup.ratio_before / sup.ratio_after);

  auto seg4 = segmented_spot(lens, 2, 4, pi / 2.0, 12.0, pts);
  em.table("segmented4_n2.txt", {"x_m", "intensity"}, {seg4.x, seg4.intensity});
  em.summary("summary.txt", rows);
}

void run_biphoton_power(Params& p, Emitter& em, std::uint64_t) {
  const double n0 = p.get("n0", 0.185);
  const double n_low = p.get("n_low", 0.002);
  const int n_pts = p.get_int("n_factors", 25);
  p.finish();

  std::vector<double> factors(n_pts);
  for (int i = 0; i < n_pts; ++i)
    factors[i] = std::exp(std::log(n_low / n0) * (1.0 - double(i) / (n_pts - 1)));

  auto att = power_dependence(PowerMode::attenuate, n0, factors);
  auto pump = power_dependence(PowerMode::pump_scale, n0, factors);
  em.table("attenuate.txt", {"factor", "density_n", "rate"}, {att.factor, att.density, att.rate});
  em.table("pump_scale.txt", {"factor", "density_n", "rate"}, {pump.factor, pump.density, pump.rate});

  const double band31 = omega_width_from_wavelength_width(31e-9, 1064e-9);
  RateModel model{0.16, band31, 0.0, 0.0};
  BandwidthSet bands{band31, band31 / 82.0, band31 / 1.64e6, band31};
  auto terms = sfg_rate_terms(model, bands);
  em.summary("summary.txt",
             {
                 {"attenuate_slope", att.global_slope},
                 {"pump_scale_global_slope", pump.global_slope},
                 {"pump_scale_slope_low", pump.slope_low},
                 {"pump_scale_slope_high", pump.slope_high},
                 {"crossover_flux_31nm_1064nm_s", crossover_flux(band31)},
                 {"correlated_over_uncorrelated", terms.correlated_over_uncorrelated()},
             });
}

JointSpectrum default_joint_spectrum(Params& p, double& delta_p, double& band) {
  const double pump_nm = p.get("pump_nm", 532.0);
  const double band_nm = p.get("band_nm", 31.0);
  const int n_points = p.get_int("n_points", 2048);
  delta_p = p.get("pump_bandwidth_rad_s", two_pi * 5e6);

  const double pump = omega_from_wavelength(pump_nm * 1e-9);
  band = omega_width_from_wavelength_width(band_nm * 1e-9, 2.0 * pump_nm * 1e-9);
  SpectralGrid grid = make_grid(pump, 1.5 * band, n_points);
  return make_joint_spectrum(grid, gaussian_envelope(0.5 * pump, band));
}

void run_biphoton_mz(Params& p, Emitter& em, std::uint64_t) {
  double delta_p = 0.0, band = 0.0;
  auto js = default_joint_spectrum(p, delta_p, band);
  const double tau_probe = p.get("tau_probe_s", 550e-15);
  p.finish();

  const double w_o = 0.5 * js.grid.pump_freq;
  const double period = two_pi / w_o;

  // fine trace across four fringe periods around the probe delay
  auto taus = linspace(tau_probe - 2.0 * period, tau_probe + 2.0 * period, 481);
  auto trace = mz_interference(js, taus);
  emit_trace(em, "mz_fine.txt", trace);

  // fringe maxima spacing at the probe delay: cos^2(w_o tau) -> pi/w_o
  auto peaks = local_maxima(trace.axis, trace.values);
  double spacing = 0.0;
  if (peaks.size() >= 2) {
    std::vector<double> xs;
    for (auto& pk : peaks) xs.push_back(pk.x);
    std::sort(xs.begin(), xs.end());
    std::vector<double> gaps;
    for (std::size_t i = 1; i < xs.size(); ++i) gaps.push_back(xs[i] - xs[i - 1]);
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    spacing = gaps[gaps.size() / 2];
  }

  std::vector<double> probe_taus, vis2, vis1;
  for (double t : {0.1e-12, 0.2e-12, 0.35e-12, 0.55e-12, 0.8e-12}) {
    probe_taus.push_back(t);
    vis2.push_back(mz_visibility(js, t));
    vis1.push_back(one_photon_visibility(js, t));
  }
  em.table("visibility.txt", {"delay_s", "two_photon_visibility", "one_photon_visibility"},
           {probe_taus, vis2, vis1});
  em.summary("summary.txt",
             {
                 {"fringe_spacing_s", spacing},
                 {"pump_period_s", pi / w_o},
                 {"retardation_period_m", c_light * spacing},
                 {"pump_wavelength_m", wavelength_from_omega(js.grid.pump_freq)},
                 {"visibility_at_probe", mz_visibility(js, tau_probe)},
                 {"one_photon_visibility_at_probe", one_photon_visibility(js, tau_probe)},
             });
}

void run_biphoton_shape(Params& p, Emitter& em, std::uint64_t) {
  double delta_p = 0.0, band = 0.0;
  auto js = default_joint_spectrum(p, delta_p, band);
  const double delay_fs = p.get("delay_fs", 300.0);
  p.finish();

  const double t_span = 40.0 / band;
  auto taus = linspace(-t_span, t_span, 1601);

  auto base = sfg_delay_response(js, delta_p, taus);
  emit_trace(em, "g2_baseline.txt", base);

  // pi step at the amplitude median of the signal half (F sums amplitudes)
  const auto& grid = js.grid;
  double total = 0.0;
  for (int j = grid.signal_begin(); j < grid.n_points; ++j) total += js.g[j];
  double acc = 0.0;
  double median = 0.0;
  for (int j = grid.signal_begin(); j < grid.n_points; ++j) {
    acc += js.g[j];
    if (acc >= 0.5 * total) {
      median = grid.detuning(j);
      break;
    }
  }
  PhaseMask step = PhaseMask::step(median, pi, MaskTarget::signal);
  auto stepped = sfg_delay_response(js, delta_p, taus, &step);
  emit_trace(em, "g2_pi_step.txt", stepped);

  // signal-only delay: the pair phase picks up d*tau and G2 shifts by tau (a
  // common delay of both halves cancels pairwise and shifts t_plus instead)
  PhaseMask shift = PhaseMask::delay(delay_fs * 1e-15, MaskTarget::signal);
  auto shifted = sfg_delay_response(js, delta_p, taus, &shift);
  emit_trace(em, "g2_delayed.txt", shifted);

  auto cut = two_photon_wavefunction(js, delta_p, taus, &step);
  canonicalize_phase(cut.F);
  std::vector<double> re(cut.F.size()), im(cut.F.size());
  for (std::size_t i = 0; i < cut.F.size(); ++i) {
    re[i] = cut.F[i].real();
    im[i] = cut.F[i].imag();
  }
  em.table("wavefunction_pi_step.txt", {"t_minus_s", "re_F", "im_F"}, {cut.t_minus, re, im});
  em.summary("summary.txt", {
                                {"t_plus_width_s", cut.t_plus_width},
                                {"step_detuning_rad_s", median},
                            });
}

const char* plot_script = R"(#!/usr/bin/env python3
# Plots every data table emitted next to this script.
import glob
import os

import matplotlib.pyplot as plt
import numpy as np

here = os.path.dirname(os.path.abspath(__file__))
for path in sorted(glob.glob(os.path.join(here, "*.txt"))):
    name = os.path.basename(path)
    if name in ("manifest.txt", "summary.txt"):
        continue
    with open(path) as fh:
        header = fh.readline().lstrip("#").split()
    data = np.loadtxt(path)
    if data.ndim != 2 or data.shape[1] < 2:
        continue
    plt.figure()
    for col in range(1, min(data.shape[1], 4)):
        label = header[col] if col < len(header) else "col%d" % col
        plt.plot(data[:, 0], data[:, col], label=label)
    plt.xlabel(header[0] if header else "x")
    plt.legend()
    plt.title(name)
plt.show()
)";

using ScenarioFn = std::function<void(Params&, Emitter&, std::uint64_t)>;

struct Entry {
  ScenarioInfo info;
  ScenarioFn fn;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> v{
        {{"biphoton-mz", "biphoton-regime", "two-photon Mach-Zehnder fringes and visibilities"},
         run_biphoton_mz},
        {{"biphoton-power", "biphoton-regime", "SFG power dependence, crossover flux and rate terms"},
         run_biphoton_power},
        {{"biphoton-shape", "biphoton-regime", "two-photon wave function shaping and G2 delay response"},
         run_biphoton_shape},
        {{"coherent-control", "two-photon-response", "square-wave transfer of the coherent TPA peak"},
         run_coherent_control},
        {{"litho-spot", "quantum-litho", "N-photon spots, metrics and side-lobe suppression"},
         run_litho_spot},
        {{"ocdma-ber", "ocdma-link", "frame Monte Carlo BER vs channel count, OOK and PSK"},
         run_ocdma_ber},
        {{"ocdma-dispersion", "ocdma-link", "coherent-peak sensitivity to dispersion orders"},
         run_ocdma_dispersion},
        {{"opo-efficiency", "opo-steady-state", "conversion-efficiency curves vs pump ratio"},
         run_opo_efficiency},
        {{"opo-spectrum", "opo-steady-state", "tax-minimizing oscillation spectra and line doubling"},
         run_opo_spectrum},
        {{"phasematch-threshold", "crystal-phase-matching", "mismatch and threshold curves, band widths"},
         run_phasematch_threshold},
        {{"tpa-delay-scan", "two-photon-response", "TPA response vs signal-idler delay"},
         run_tpa_delay_scan},
        {{"tpa-pump-scan", "two-photon-response", "coherent TPA peak vs pump detuning"},
         run_tpa_pump_scan},
        {{"twm-phase-lock", "three-wave-mixing", "three-wave mixing trajectory and phase locking"},
         run_twm_phase_lock},
    };
    return v;
  }();
  return table;
}

std::string utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_registry() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

std::string format_manifest(const RunManifest& m) {
  std::ostringstream out;
  out << "scenario = " << m.scenario << "\n";
  out << "version = " << m.version << "\n";
  out << "seed = " << m.seed << "\n";
  out << "started_utc = " << m.started_utc << "\n";
  out << "finished_utc = " << m.finished_utc << "\n";
  for (const auto& [k, v] : m.resolved_params) out << "param." << k << " = " << v << "\n";
  for (const auto& [name, hash] : m.files) out << "file = " << name << " sha256:" << hash << "\n";
  return out.str();
}

RunManifest run_scenario(const ScenarioConfig& config) {
  const Entry* entry = nullptr;
  for (const auto& e : entries())
    if (e.info.name == config.scenario) entry = &e;
  if (!entry) throw UnknownScenarioError("unknown scenario '" + config.scenario + "'");

  RunManifest manifest;
  manifest.scenario = config.scenario;
  manifest.seed = config.seed;
  manifest.version = toolkit_version;
  manifest.started_utc = utc_now();

  Emitter em;
  em.dir = config.out_dir;
  std::error_code ec;
  fs::create_directories(em.dir, ec);
  if (ec) throw IoError("cannot create output directory " + config.out_dir);

  Params params(config.params);
  try {
    entry->fn(params, em, config.seed);
  } catch (const BadParamsError&) {
    throw;
  } catch (const IoError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw BadParamsError(e.what());
  }
  params.finish();

  if (config.emit_plots) em.text("plot_all.py", plot_script);

  manifest.resolved_params = params.resolved();
  for (const auto& name : em.files) {
    try {
      manifest.files.emplace_back(name, sha256_file((em.dir / name).string()));
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
  }
  manifest.finished_utc = utc_now();

  std::ofstream mf(em.dir / "manifest.txt");
  if (!mf) throw IoError("cannot write manifest");
  mf << format_manifest(manifest);
  if (!mf) throw IoError("manifest write failed");
  return manifest;
}

}  // namespace pairwise
