#include <doctest.h>

#include <cmath>
#include <complex>

#include "pairwise/constants.hpp"
#include "pairwise/curve.hpp"
#include "pairwise/twm.hpp"

using namespace pairwise;
using cd = std::complex<double>;

TEST_SUITE("three-wave-mixing") {

TEST_CASE("kappa = 0 freezes the amplitudes") {
  TwmState init{cd{0.3, 0.1}, cd{-0.2, 0.4}, cd{1.0, 0.0}};
  auto traj = integrate_twm(init, 0.0, 5.0, 1e-10);
  for (const auto& s : traj.states) {
    CHECK(std::abs(s.a_s - init.a_s) < 1e-14);
    CHECK(std::abs(s.a_i - init.a_i) < 1e-14);
    CHECK(std::abs(s.a_p - init.a_p) < 1e-14);
  }
  auto d = conserved_drift(traj);
  CHECK(d.manley_rowe_si == 0.0);
  CHECK(d.manley_rowe_sp == 0.0);
  CHECK(d.c1 == 0.0);
}

TEST_CASE("small-signal gain matches the cosh/sinh solution") {
  const double kappa = 1.0;
  const cd a_s0{1e-6, 0.0};
  // dtheta(0) = -arg(A_i0) > 0: the seed starts in the amplifying quadrant,
  // so |A_s| grows from the start
  const cd a_i0 = 1e-6 * std::polar(1.0, -0.9);
  TwmState init{a_s0, a_i0, cd{1.0, 0.0}};
  auto traj = integrate_twm(init, kappa, 3.0, 1e-12);

  // undepleted pump: A_s(z) = A_s0 cosh(kz) - i conj(A_i0) sinh(kz)
  for (std::size_t i = 0; i < traj.z.size(); ++i) {
    double z = traj.z[i];
    cd expected_s = a_s0 * std::cosh(kappa * z) - cd{0.0, 1.0} * std::conj(a_i0) * std::sinh(kappa * z);
    cd expected_i = a_i0 * std::cosh(kappa * z) - cd{0.0, 1.0} * std::conj(a_s0) * std::sinh(kappa * z);
    CHECK(std::abs(traj.states[i].a_s - expected_s) < 1e-6 * std::abs(expected_s));
    CHECK(std::abs(traj.states[i].a_i - expected_i) < 1e-6 * std::abs(expected_i));
  }

  // |A_s| grows monotonically while the pump is undepleted
  for (std::size_t i = 1; i < traj.states.size(); ++i)
    CHECK(std::abs(traj.states[i].a_s) >= std::abs(traj.states[i - 1].a_s));
}

TEST_CASE("symmetric seeds stay symmetric") {
  TwmState init{cd{1e-5, 0.0}, cd{1e-5, 0.0}, cd{1.0, 0.0}};
  auto traj = integrate_twm(init, 1.0, 12.0, 1e-10);
  for (const auto& s : traj.states)
    CHECK(std::abs(std::abs(s.a_s) - std::abs(s.a_i)) < 1e-10 * std::max(std::abs(s.a_s), 1e-30));
}

TEST_CASE("phase sum locks onto +pi/2 under gain") {
  // generic tiny seeds with assorted phases
  for (double phi : {0.4, 1.3, -2.0, 2.9}) {
    TwmState init{1e-8 * std::polar(1.0, 0.3), 1e-8 * std::polar(1.0, phi), cd{1.0, 0.0}};
    auto traj = integrate_twm(init, 1.0, 14.0, 1e-10);
    auto dtheta = phase_sum(traj);
    CHECK(std::abs(dtheta.back() - pi / 2.0) < 1e-3);

    // the sign of sin(dtheta) after the first e-folding of R_s predicts the branch
    double r0 = std::abs(traj.states.front().a_s);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      if (std::abs(traj.states[i].a_s) > std::exp(1.0) * r0) {
        CHECK(std::sin(dtheta[i]) > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("dtheta = pi/2 is a fixed point") {
  // theta_p - theta_s - theta_i = pi/2 exactly, unequal magnitudes
  const double ts = 0.4;
  const double ti = -ts - pi / 2.0;  // theta_p = 0
  TwmState init{0.02 * std::polar(1.0, ts), 0.05 * std::polar(1.0, ti), cd{1.0, 0.0}};
  auto traj = integrate_twm(init, 1.0, 3.0, 1e-11);
  auto dtheta = phase_sum(traj);
  for (double v : dtheta) CHECK(std::abs(v - pi / 2.0) < 1e-6);
}

TEST_CASE("conserved quantities drift below 1e-8 at tolerance 1e-10") {
  TwmState init{cd{0.1, 0.05}, cd{-0.07, 0.12}, cd{1.0, -0.2}};
  auto traj = integrate_twm(init, 1.0, 6.0, 1e-10);
  auto d = conserved_drift(traj);
  CHECK(d.manley_rowe_si < 1e-8);
  CHECK(d.manley_rowe_sp < 1e-8);
  CHECK(d.c1 < 1e-8);

  // |C1| stays below its bound R_s(0) R_i(0) R_p(0) at every z
  double bound = std::abs(init.a_s) * std::abs(init.a_i) * std::abs(init.a_p);
  for (const auto& s : traj.states) {
    double c1 = (s.a_p * std::conj(s.a_s) * std::conj(s.a_i)).real();
    CHECK(std::abs(c1) <= bound * (1.0 + 1e-8));
  }
}

TEST_CASE("fixed-step drift converges at the integrator order") {
  TwmState init{cd{0.1, 0.0}, cd{0.1, 0.02}, cd{1.0, 0.0}};
  std::vector<double> log_h, log_drift;
  for (int steps : {100, 200, 400, 800}) {
    auto traj = integrate_twm_fixed(init, 1.0, 4.0, steps);
    auto d = conserved_drift(traj);
    double drift = std::max({d.manley_rowe_si, d.manley_rowe_sp, d.c1});
    log_h.push_back(std::log(4.0 / steps));
    log_drift.push_back(std::log(drift));
  }
  // classical RK4: drift ~ h^4
  CHECK(fit_slope(log_h, log_drift) == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("time reversal: conjugate and integrate back") {
  TwmState init{cd{0.2, -0.1}, cd{0.15, 0.3}, cd{0.9, 0.1}};
  auto fwd = integrate_twm(init, 1.0, 2.5, 1e-11);
  const auto& end = fwd.states.back();
  TwmState conj_end{std::conj(end.a_s), std::conj(end.a_i), std::conj(end.a_p)};
  auto back = integrate_twm(conj_end, 1.0, 2.5, 1e-11);
  const auto& out = back.states.back();
  CHECK(std::abs(std::conj(out.a_s) - init.a_s) < 1e-8);
  CHECK(std::abs(std::conj(out.a_i) - init.a_i) < 1e-8);
  CHECK(std::abs(std::conj(out.a_p) - init.a_p) < 1e-8);
}

TEST_CASE("phase is masked at zero amplitude") {
  TwmState init{cd{0.0, 0.0}, cd{0.1, 0.0}, cd{1.0, 0.0}};
  auto traj = integrate_twm_fixed(init, 0.0, 1.0, 4);
  auto dtheta = phase_sum(traj, 1e-30);
  for (double v : dtheta) CHECK(std::isnan(v));
}

TEST_CASE("input validation") {
  TwmState init{cd{0.1, 0.0}, cd{0.1, 0.0}, cd{1.0, 0.0}};
  CHECK_THROWS_AS(integrate_twm(init, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate_twm(init, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate_twm_fixed(init, 1.0, 1.0, 0), std::invalid_argument);
  TwmTrajectory empty;
  CHECK_THROWS_AS(conserved_drift(empty), std::invalid_argument);
}

}  // TEST_SUITE
