#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pairwise/constants.hpp"
#include "pairwise/curve.hpp"
#include "pairwise/mask.hpp"
#include "pairwise/response.hpp"
#include "pairwise/rng.hpp"

using namespace pairwise;

TEST_SUITE("two-photon-response") {

TEST_CASE("sfg of a single mode peaks only at twice its frequency") {
  auto g = make_grid(1e15, 1e13, 64);
  auto f = make_field(g, flat_envelope(0.0));
  const int j0 = 50;
  f.amp[j0] = cdouble{1.0, 0.0};
  auto spec = sfg_spectrum(f);
  std::size_t imax = std::max_element(spec.values.begin(), spec.values.end()) - spec.values.begin();
  CHECK(spec.sum_detuning[imax] == doctest::Approx(2.0 * g.detuning(j0)).epsilon(1e-12));
  double total = 0.0;
  for (auto v : spec.values) total += v;
  CHECK(spec.values[imax] == doctest::Approx(total).epsilon(1e-12));  // single bin carries everything
}

TEST_CASE("conjugate pair: fully constructive peak at the pump frequency") {
  auto g = make_grid(3.54e15, 2.6e13, 1024);
  auto pair = sample_down_converted(g, gaussian_envelope(1.77e15, 2e13), 42);
  auto spec = sfg_spectrum(pair.field);
  const double expected = pair.signal_power() * pair.signal_power();
  CHECK(spec.at_pump() == doctest::Approx(expected).epsilon(1e-9));
  CHECK(std::norm(pair_sum_amplitude(pair.field)) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(coherent_peak(pair) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("incoherent field shows no enhancement") {
  // random-walk oracle: every output bin is a sum of n_m independent mode
  // products, so E R(W) is proportional to the overlap count n_m. The pump
  // bin (n_m = N) is compared against the adjacent bins (n_m = N - 1) after
  // correcting for that count; no coherent enhancement should remain.
  auto g = make_grid(1e15, 1e13, 64);
  const int n_real = 1000;
  const int n = g.n_points;
  double px = 0.0, px2 = 0.0, py = 0.0, py2 = 0.0;
  for (int r = 0; r < n_real; ++r) {
    auto f = sample_incoherent(g, flat_envelope(1.0), derive_seed(99, r));
    auto spec = sfg_spectrum(f);
    std::size_t c = spec.values.size() / 2;
    double x = spec.values[c];
    double y = 0.5 * (spec.values[c - 1] + spec.values[c + 1]);
    px += x;
    px2 += x * x;
    py += y;
    py2 += y * y;
  }
  double mx = px / n_real, my = py / n_real;
  double vx = (px2 - px * px / n_real) / (n_real - 1.0);
  double vy = (py2 - py * py / n_real) / (n_real - 1.0);
  double ratio = mx / my * double(n - 1) / double(n);
  double sd = ratio * std::sqrt(vx / (n_real * mx * mx) + vy / (n_real * my * my));
  CHECK(std::abs(ratio - 1.0) < 3.0 * sd);
}

TEST_CASE("coherent peak phase rules") {
  auto g = make_grid(1e15, 1e13, 512);
  auto pair = sample_down_converted(g, flat_envelope(1.0), 4);
  const double base = coherent_peak(pair);

  // antisymmetric cubic phase on both halves cancels pairwise
  PhaseMask cubic = PhaseMask::dispersion(3, 1.0 / std::pow(g.half_span, 3) * 25.0, MaskTarget::both);
  CHECK(coherent_peak(pair, &cubic) == doctest::Approx(base).epsilon(1e-12));

  // large even phase destroys the constructive sum
  PhaseMask quad = PhaseMask::dispersion(2, 10.0 / (g.half_span * g.half_span), MaskTarget::both);
  CHECK(coherent_peak(pair, &quad) < base / 10.0);
}

TEST_CASE("quadratic-phase suppression matches the fresnel oracle") {
  // flat envelope: |int_0^S exp(2 i c d^2) dd|^2 / S^2 against a dense
  // independent quadrature of the same integral
  auto g = make_grid(1e15, 1e13, 4096);
  const double S = g.half_span;
  const double c = 10.0 / (S * S);
  auto f = make_field(g, flat_envelope(1.0));
  PhaseMask quad = PhaseMask::dispersion(2, c, MaskTarget::both);
  double ratio = coherent_peak_envelope(f, &quad) / coherent_peak_envelope(f, nullptr);

  const int nq = 200000;
  cdouble acc{0.0, 0.0};
  for (int i = 0; i < nq; ++i) {
    double d = S * (i + 0.5) / nq;
    acc += std::polar(1.0, 2.0 * c * d * d);
  }
  double oracle = std::norm(acc / double(nq));
  CHECK(ratio == doctest::Approx(oracle).epsilon(2e-3));
}

TEST_CASE("sfg value lookup respects the output support") {
  auto g = make_grid(1e15, 1e13, 64);
  auto pair = sample_down_converted(g, flat_envelope(1.0), 6);
  auto spec = sfg_spectrum(pair.field);
  CHECK(spec.value_at(g.pump_freq) == spec.at_pump());
  CHECK_THROWS_AS(spec.value_at(g.pump_freq + 4.1 * g.half_span), std::out_of_range);
}

TEST_CASE("delay scan rejects delays outside the unambiguity window") {
  auto g = make_grid(1e15, 1e13, 64);
  auto pair = sample_down_converted(g, flat_envelope(1.0), 6);
  std::vector<double> bad{1.1 * two_pi / g.spacing()};
  CHECK_THROWS_AS(delay_scan(pair, bad), std::invalid_argument);
}

TEST_CASE("delay scan: peak at zero, agreement with the sfg route") {
  auto g = make_grid(1e15, 2e13, 512);
  auto pair = sample_down_converted(g, gaussian_envelope(0.5e15, 1.5e13), 8);
  std::vector<double> taus;
  for (int i = -40; i <= 40; ++i) taus.push_back(i * 2.5e-15);
  auto trace = delay_scan(pair, taus);

  std::size_t imax = std::max_element(trace.values.begin(), trace.values.end()) - trace.values.begin();
  CHECK(trace.axis[imax] == 0.0);

  // sfg of the delayed pair at the pump bin reproduces every scan point
  for (int i : {5, 23, 40, 52, 71}) {
    auto delayed = apply_mask(pair, PhaseMask::delay(taus[i], MaskTarget::signal));
    auto spec = sfg_spectrum(delayed.field);
    CHECK(spec.at_pump() == doctest::Approx(trace.values[i]).epsilon(1e-9));
  }
}

TEST_CASE("100 nm band: response collapses within 100 fs of delay") {
  // signal and idler bands of 100 nm (1/e) each, centered away from the
  // degeneracy edge so the band has no sharp spectral cut
  const double pump = omega_from_wavelength(516.65e-9);
  const double band = omega_width_from_wavelength_width(100e-9, 1033.3e-9);
  auto g = make_grid(pump, 2.5 * band, 4096);
  const double center = 0.5 * pump;
  auto env = [center, band](double w) {
    double u = (std::abs(w - center) - band) / (0.5 * band);
    return std::exp(-u * u);
  };
  auto pair = sample_down_converted(g, env, 15);
  std::vector<double> taus{0.0, 100e-15};
  auto trace = delay_scan(pair, taus);
  CHECK(trace.values[1] < 0.01 * trace.values[0]);
}

TEST_CASE("pump detuning scan: voigt shape and combined width") {
  const double c0 = 516.65e-9;
  LineModel line{omega_width_from_wavelength_width(0.04e-9, c0),
                 omega_width_from_wavelength_width(0.08e-9, c0)};
  std::vector<double> det;
  const double span = omega_width_from_wavelength_width(0.5e-9, c0);
  for (int i = -800; i <= 800; ++i) det.push_back(span * i / 800.0);
  auto trace = pump_detuning_scan(line, det, 0.02);

  std::size_t imax = std::max_element(trace.values.begin(), trace.values.end()) - trace.values.begin();
  CHECK(std::abs(trace.axis[imax]) <= span / 800.0);
  CHECK(trace.values[imax] == doctest::Approx(1.02).epsilon(1e-6));

  // far wings sit on the pedestal
  CHECK(trace.values.front() < 0.02 + 0.02);
  CHECK(trace.values.front() > 0.02);

  // combined width (1/e of the coherent part) ~ 0.12 nm within 15%
  std::vector<double> net(trace.values.size());
  for (std::size_t i = 0; i < net.size(); ++i) net[i] = trace.values[i] - 0.02;
  double w = width(trace.axis, net, WidthKind::one_over_e_full);
  double w_nm = wavelength_width_from_omega_width(w, c0) * 1e9;
  CHECK(w_nm == doctest::Approx(0.12).epsilon(0.15));
}

TEST_CASE("square-wave control transfer follows cos^2(phi/2)") {
  auto g = make_grid(1e15, 1e13, 2048);
  auto pair = sample_down_converted(g, flat_envelope(1.0), 2);
  const double period = 2.0 * g.half_span / 8.0;  // 8 blocks per half, exactly balanced

  std::vector<double> amps{0.0, pi / 2.0, pi, 3.0 * pi / 2.0, 2.0 * pi, 3.0 * pi, 4.0 * pi, 5.0 * pi};
  auto trace = control_transfer(pair, amps, period);
  CHECK(trace.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trace.values[1] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(trace.values[2] < 1e-3);
  CHECK(trace.values[3] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(trace.values[4] >= 0.999);
  CHECK(trace.values[5] < 1e-3);
  CHECK(trace.values[6] >= 0.999);
  CHECK(trace.values[7] < 1e-3);

  // periodic in phi with period 2 pi
  std::vector<double> pair_amps{0.7, 0.7 + 2.0 * pi};
  auto periodic = control_transfer(pair, pair_amps, period);
  CHECK(periodic.values[0] == doctest::Approx(periodic.values[1]).epsilon(1e-9));

  // unbalanced square wave is flagged
  CHECK_THROWS_AS(control_transfer(pair, amps, 4.0 * g.half_span), std::invalid_argument);
}

TEST_CASE("enhancement ratio approaches Delta/(2 delta)") {
  CHECK(enhancement_analytic(2.0, 1.0) == doctest::Approx(1.0));
  CHECK(enhancement_analytic(8.2e12, 5e6) == doctest::Approx(8.2e5).epsilon(1e-12));

  auto g = make_grid(1e15, 1e13, 200);
  auto prototype = sample_down_converted(g, flat_envelope(1.0), 1234);
  auto est = enhancement_ratio(prototype, 1000);
  CHECK(est.analytic == doctest::Approx(100.0));
  CHECK(std::abs(est.measured - est.analytic) / est.analytic < 0.20);
  CHECK(est.stderr_ > 0.0);
  CHECK_THROWS_AS(enhancement_ratio(prototype, 10), std::invalid_argument);
}

TEST_CASE("background and peak scale differently with mode count") {
  // background ~ n_modes, conjugate peak ~ n_modes^2
  std::vector<double> log_n, log_peak, log_bg;
  for (int n : {64, 128, 256, 512, 1024}) {
    auto g = make_grid(1e15, 1e13 * n / 64.0, n);  // fixed dw, growing span
    double peak = 0.0, bg = 0.0;
    const int n_real = 100;
    for (int r = 0; r < n_real; ++r) {
      auto pair = sample_down_converted(g, flat_envelope(1.0), derive_seed(n, r));
      auto spec = sfg_spectrum(pair.field);
      peak += spec.at_pump();
      bg += spec.background(0.1 * 2.0 * g.half_span);
    }
    log_n.push_back(std::log(double(n)));
    log_peak.push_back(std::log(peak / n_real));
    log_bg.push_back(std::log(bg / n_real));
  }
  CHECK(fit_slope(log_n, log_peak) == doctest::Approx(2.0).epsilon(0.025));
  CHECK(fit_slope(log_n, log_bg) == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("equivalent pulse duration") {
  // 100 nm gaussian band at 1033 nm: ~23 fs at the 1/e convention
  const double pump = omega_from_wavelength(516.65e-9);
  const double width_w = omega_width_from_wavelength_width(100e-9, 1033e-9);
  auto g = make_grid(pump, 2.5 * width_w, 1024);
  auto env = make_field(g, gaussian_envelope(0.5 * pump, width_w)).envelope;
  double dur = equivalent_pulse_duration(g, env);
  CHECK(dur == doctest::Approx(23e-15).epsilon(0.15));

  // doubling the bandwidth halves the duration
  auto env2 = make_field(g, gaussian_envelope(0.5 * pump, 2.0 * width_w)).envelope;
  CHECK(equivalent_pulse_duration(g, env2) == doctest::Approx(0.5 * dur).epsilon(0.01));

  // rectangular spectrum: sinc^2 with FWHM 0.886 * 2 pi / Delta
  auto flat = make_field(g, flat_envelope(1.0)).envelope;
  double delta = 2.0 * g.half_span;
  CHECK(equivalent_pulse_duration(g, flat, WidthKind::fwhm) ==
        doctest::Approx(0.886 * two_pi / delta).epsilon(0.01));
}

}  // TEST_SUITE
