#include <doctest.h>

#include <cmath>
#include <complex>

#include "pairwise/constants.hpp"
#include "pairwise/curve.hpp"
#include "pairwise/ocdma.hpp"
#include "pairwise/rng.hpp"

using namespace pairwise;

namespace {

SpectralGrid link_grid(int n = 1024) { return make_grid(1e15, 1e13, n); }

}  // namespace

TEST_SUITE("ocdma-link") {

TEST_CASE("encode") {
  auto g = link_grid(256);
  auto key = gen_keys(g, flat_envelope(1.0), 3);

  auto off = encode(key.field, 0, Modulation::ook);
  for (int j = g.signal_begin(); j < g.n_points; ++j) CHECK(off.amp[j] == cdouble{0.0, 0.0});
  for (int j = 0; j < g.signal_begin(); ++j) CHECK(off.amp[j] == key.field.amp[j]);

  auto psk0 = encode(key.field, 0, Modulation::psk);
  CHECK(psk0.amp == key.field.amp);

  // PSK bit 1 flips the decision statistic's phase by pi, |R| unchanged
  auto psk1 = encode(key.field, 1, Modulation::psk);
  SpectralField f0 = key.field, f1 = psk1;
  auto c0 = pair_sum_amplitude(f0);
  auto c1 = pair_sum_amplitude(f1);
  CHECK(std::abs(c1 + c0) < 1e-12 * std::abs(c0));
  CHECK(std::abs(std::abs(c1) - std::abs(c0)) < 1e-12 * std::abs(c0));

  CHECK_THROWS_AS(encode(key.field, 2, Modulation::ook), std::invalid_argument);
}

TEST_CASE("mux reduces to the key for one undelayed channel") {
  auto g = link_grid(256);
  auto key = gen_keys(g, flat_envelope(1.0), 9);
  std::vector<Channel> ch{{0, 0.0, Modulation::psk}};
  std::vector<int> bits{0};
  auto combined = mux(ch, bits, key);
  CHECK(combined.amp == key.field.amp);
}

TEST_CASE("mux rejects delay collisions") {
  auto g = link_grid(256);
  auto key = gen_keys(g, flat_envelope(1.0), 9);
  const double coherence = 2.0 / (2.0 * g.half_span);
  std::vector<Channel> ch{{0, 0.0, Modulation::psk}, {1, 0.5 * coherence, Modulation::psk}};
  std::vector<int> bits{0, 0};
  CHECK_THROWS_AS(mux(ch, bits, key), std::invalid_argument);
}

TEST_CASE("combined power is additive over channels") {
  // exact bookkeeping needs the channel cross terms to vanish identically,
  // which holds for a constant-modulus key on orthogonal delay signatures
  auto g = link_grid(512);
  auto key = gen_keys(g, flat_envelope(1.0), 21);
  for (int j = g.signal_begin(); j < g.n_points; ++j) {
    double m = std::abs(key.field.amp[j]);
    key.field.amp[j] /= m;
    key.field.amp[g.twin(j)] = std::conj(key.field.amp[j]);
  }
  const double gap = 2.0 * pi / g.half_span;  // 2 dt: orthogonal delay signatures
  const double key_idler_power = key.field.total_power() - key.signal_power();

  for (int k : {1, 2, 4, 8}) {
    std::vector<Channel> ch;
    std::vector<int> bits;
    for (int c = 0; c < k; ++c) {
      ch.push_back({c, c * gap, Modulation::psk});
      bits.push_back(1);
    }
    auto combined = mux(ch, bits, key);
    double expected = k * key.signal_power() + key_idler_power;
    CHECK(combined.total_power() == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("matched decode recovers the coherent peak, mismatch collapses") {
  auto g = link_grid(1024);
  auto key = gen_keys(g, flat_envelope(1.0), 31);
  std::vector<Channel> ch{{0, 0.0, Modulation::psk}};
  std::vector<int> bits{1};
  auto combined = mux(ch, bits, key);

  double peak = std::norm(decode(combined, 0.0));
  CHECK(peak == doctest::Approx(key.signal_power() * key.signal_power()).epsilon(1e-12));

  // decoding far off the channel's signature leaves only the background
  const double coherence = 2.0 / (2.0 * g.half_span);
  double off = std::norm(decode(combined, 50.0 * coherence));
  CHECK(off < peak / 50.0);
}

TEST_CASE("re-applying a delay leaves other statistics untouched") {
  auto g = link_grid(512);
  auto key = gen_keys(g, flat_envelope(1.0), 17);
  const double gap = 2.0 * pi / g.half_span;  // 2 dt: orthogonal delay signatures
  std::vector<Channel> ch{{0, 0.0, Modulation::psk}, {1, gap, Modulation::psk}, {2, 2.0 * gap, Modulation::psk}};
  std::vector<int> bits{0, 1, 0};
  auto combined = mux(ch, bits, key);

  auto before = decode(combined, ch[2].delay);
  // receiver for channel 0: remove its delay, detect, reinsert
  auto pass = apply_mask(combined, PhaseMask::delay(-ch[0].delay, MaskTarget::signal));
  auto restored = apply_mask(pass, PhaseMask::delay(ch[0].delay, MaskTarget::signal));
  auto after = decode(restored, ch[2].delay);
  CHECK(std::abs(before - after) < 1e-9 * std::abs(before));
}

TEST_CASE("signal-to-interference follows G/(K-1)") {
  auto g = link_grid(512);
  const double G = g.n_points / 2.0;
  const double gap = 2.0 * pi / g.half_span;  // 2 dt: orthogonal delay signatures
  const int frames = 300;

  for (int k : {4, 8}) {
    double sig = 0.0, intf = 0.0;
    for (int f = 0; f < frames; ++f) {
      auto key = gen_keys(g, flat_envelope(1.0), derive_seed(1000 + k, f));
      // matched channel alone
      std::vector<Channel> just_me{{0, 0.0, Modulation::psk}};
      std::vector<int> one{0};
      sig += std::norm(decode(mux(just_me, one, key), 0.0));
      // the other k-1 channels alone, decoded at the matched delay
      std::vector<Channel> others;
      std::vector<int> bits;
      NoiseRng rng(derive_seed(2000 + k, f));
      for (int c = 1; c < k; ++c) {
        others.push_back({c, c * gap, Modulation::psk});
        bits.push_back(rng.uniform() < 0.5 ? 0 : 1);
      }
      intf += std::norm(decode(mux(others, bits, key), 0.0));
    }
    double sir = sig / intf;
    double expected = G / (k - 1);
    CHECK(std::abs(sir - expected) / expected < 0.25);
  }
}

TEST_CASE("interference power scales with K - 1") {
  auto g = link_grid(512);
  const double gap = 2.0 * pi / g.half_span;  // 2 dt: orthogonal delay signatures
  const int frames = 200;
  std::vector<double> log_km1, log_intf;
  for (int k : {2, 4, 8, 16}) {
    double intf = 0.0;
    for (int f = 0; f < frames; ++f) {
      auto key = gen_keys(g, flat_envelope(1.0), derive_seed(77 * k, f));
      std::vector<Channel> others;
      std::vector<int> bits;
      NoiseRng rng(derive_seed(88 * k, f));
      for (int c = 1; c < k; ++c) {
        others.push_back({c, c * gap, Modulation::psk});
        bits.push_back(rng.uniform() < 0.5 ? 0 : 1);
      }
      intf += std::norm(decode(mux(others, bits, key), 0.0));
    }
    log_km1.push_back(std::log(double(k - 1)));
    log_intf.push_back(std::log(intf / frames));
  }
  CHECK(fit_slope(log_km1, log_intf) == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("psk decision statistic carries the bit phase") {
  auto g = link_grid(4096);
  const double gap = 2.0 * pi / g.half_span;  // 2 dt: orthogonal delay signatures
  const int k = 4;  // SIR = 2048/3, comfortably above the >= 10 precondition
  int checked = 0;
  for (int f = 0; f < 30; ++f) {
    auto key = gen_keys(g, flat_envelope(1.0), derive_seed(4242, f));
    std::vector<Channel> ch;
    std::vector<int> bits;
    NoiseRng rng(derive_seed(2424, f));
    for (int c = 0; c < k; ++c) {
      ch.push_back({c, c * gap, Modulation::psk});
      bits.push_back(c == 0 ? 0 : (rng.uniform() < 0.5 ? 0 : 1));
    }
    auto combined = mux(ch, bits, key);
    auto ref = decode(combined, ch[0].delay);
    for (int c = 1; c < k; ++c) {
      auto stat = decode(combined, ch[c].delay);
      double phase = std::arg(stat * std::conj(ref));
      double expected = bits[c] == 0 ? 0.0 : pi;
      double diff = std::abs(std::remainder(phase - expected, 2.0 * pi));
      CHECK(diff <= 0.2);
      ++checked;
    }
  }
  CHECK(checked == 30 * (k - 1));
}

TEST_CASE("ber: single channel is error free; psk beats ook; ber grows with K") {
  LinkBudget budget{1024.0 * two_pi * 1e9, two_pi * 1e9, 10.0, 1};

  auto single = ber_monte_carlo(budget, Modulation::ook, 200, 5);
  CHECK(single.errors == 0);

  budget.n_channels = 2;
  auto single_psk = ber_monte_carlo(budget, Modulation::psk, 200, 5);
  CHECK(single_psk.errors == 0);

  budget.n_channels = 16;
  auto ook16 = ber_monte_carlo(budget, Modulation::ook, 400, 6);
  auto psk16 = ber_monte_carlo(budget, Modulation::psk, 400, 6);
  CHECK(psk16.ber < ook16.ber);

  BerResult prev;
  bool first = true;
  for (int k : {4, 8, 16}) {
    budget.n_channels = k;
    auto r = ber_monte_carlo(budget, Modulation::ook, 300, 7);
    if (!first) CHECK(r.ci_high >= prev.ci_low);  // nondecreasing within CI overlap
    prev = r;
    first = false;
  }

  CHECK_THROWS_AS(ber_monte_carlo(budget, Modulation::ook, 10, 1), std::invalid_argument);
}

TEST_CASE("capacity formula") {
  CHECK(capacity(4000.0, 1.0, 10.0) == doctest::Approx(200.0).epsilon(1e-12));
  CHECK(capacity(4000.0, 1.0, 20.0) == doctest::Approx(100.0).epsilon(1e-12));
  // spectral efficiency N delta / Delta = 0.5 / (s/n)
  double n = capacity(5e12, 2e9, 8.0);
  CHECK(n * 2e9 / 5e12 == doctest::Approx(0.5 / 8.0).epsilon(1e-12));
  CHECK_THROWS_AS(capacity(-1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("dispersion sensitivity: odd orders are free, even orders kill the peak") {
  auto g = link_grid(2048);
  auto pair = gen_keys(g, flat_envelope(1.0), 12);
  const double S = g.half_span;

  std::vector<double> cubic_coeffs{-30.0 / (S * S * S), 5.0 / (S * S * S), 30.0 / (S * S * S)};
  auto odd = dispersion_sensitivity(pair, 3, cubic_coeffs);
  for (double v : odd.values) CHECK(std::abs(v - 1.0) < 1e-9);

  std::vector<double> quad_coeffs{0.0, 10.0 / (S * S)};
  auto even = dispersion_sensitivity(pair, 2, quad_coeffs);
  CHECK(even.values[0] == doctest::Approx(1.0).epsilon(1e-12));  // coefficient 0 is maximal
  CHECK(even.values[1] < 0.1);
}

TEST_CASE("secret phase signature gates the decode") {
  auto g = link_grid(1024);
  auto key = gen_keys(g, flat_envelope(1.0), 77);
  PhaseMask secret = PhaseMask::dispersion(2, 200.0 / (g.half_span * g.half_span), MaskTarget::signal);

  std::vector<Channel> ch{{0, 0.0, Modulation::psk}};
  std::vector<int> bits{0};
  auto combined = mux(ch, bits, key, &secret);

  double with = std::norm(decode(combined, 0.0, &secret));
  double without = std::norm(decode(combined, 0.0));
  double peak = key.signal_power() * key.signal_power();
  CHECK(with == doctest::Approx(peak).epsilon(1e-9));
  CHECK(without < peak / 50.0);
}

}  // TEST_SUITE
