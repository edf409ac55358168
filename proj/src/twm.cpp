#include "pairwise/twm.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pairwise {

namespace {

using State = std::array<std::complex<double>, 3>;
constexpr std::complex<double> I{0.0, 1.0};

struct TwmSystem {
  double kappa;
  double delta_k;
  void operator()(const State& a, State& dadz, double z) const {
    std::complex<double> mism = std::polar(1.0, delta_k * z);
    dadz[0] = -I * kappa * std::conj(a[1]) * a[2] * mism;
    dadz[1] = -I * kappa * std::conj(a[0]) * a[2] * mism;
    dadz[2] = -I * kappa * a[0] * a[1] * std::conj(mism);
  }
};

State to_state(const TwmState& s) { return {s.a_s, s.a_i, s.a_p}; }
TwmState from_state(const State& a) { return {a[0], a[1], a[2]}; }

double max_amp(const TwmState& s) {
  return std::max({std::abs(s.a_s), std::abs(s.a_i), std::abs(s.a_p)});
}

}  // namespace

TwmTrajectory integrate_twm(const TwmState& initial, double kappa, double z_end, double rel_tol,
                            double delta_k) {
  if (kappa < 0.0) throw std::invalid_argument("integrate_twm: kappa must be >= 0");
  if (z_end <= 0.0) throw std::invalid_argument("integrate_twm: z_end must be positive");
  if (rel_tol <= 0.0) throw std::invalid_argument("integrate_twm: rel_tol must be positive");

  TwmTrajectory traj;
  traj.kappa = kappa;
  traj.delta_k = delta_k;

  namespace ode = boost::numeric::odeint;
  using Stepper = ode::runge_kutta_cash_karp54<State>;
  const double scale = std::max(max_amp(initial), std::numeric_limits<double>::min());
  auto stepper = ode::make_controlled<Stepper>(rel_tol * scale, rel_tol);

  State a = to_state(initial);
  auto observer = [&traj](const State& s, double z) {
    traj.z.push_back(z);
    traj.states.push_back(from_state(s));
  };
  double dz0 = (kappa > 0.0 && scale > 0.0) ? 0.01 / (kappa * scale) : z_end / 100.0;
  dz0 = std::min(dz0, z_end / 16.0);
  ode::integrate_adaptive(stepper, TwmSystem{kappa, delta_k}, a, 0.0, z_end, dz0, observer);
  return traj;
}

TwmTrajectory integrate_twm_fixed(const TwmState& initial, double kappa, double z_end, int steps,
                                  double delta_k) {
  if (steps < 1) throw std::invalid_argument("integrate_twm_fixed: steps must be >= 1");
  TwmTrajectory traj;
  traj.kappa = kappa;
  traj.delta_k = delta_k;

  namespace ode = boost::numeric::odeint;
  ode::runge_kutta4<State> rk4;
  State a = to_state(initial);
  const double dz = z_end / steps;
  traj.z.push_back(0.0);
  traj.states.push_back(initial);
  for (int i = 0; i < steps; ++i) {
    rk4.do_step(TwmSystem{kappa, delta_k}, a, i * dz, dz);
    traj.z.push_back((i + 1) * dz);
    traj.states.push_back(from_state(a));
  }
  return traj;
}

std::vector<double> phase_sum(const TwmTrajectory& traj, double amp_floor) {
  std::vector<double> out;
  out.reserve(traj.states.size());
  for (const auto& s : traj.states) {
    if (std::abs(s.a_s) <= amp_floor || std::abs(s.a_i) <= amp_floor || std::abs(s.a_p) <= amp_floor) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    out.push_back(std::arg(s.a_p * std::conj(s.a_s) * std::conj(s.a_i)));
  }
  return out;
}

DriftMetrics conserved_drift(const TwmTrajectory& traj) {
  if (traj.states.empty()) throw std::invalid_argument("conserved_drift: empty trajectory");
  const auto& s0 = traj.states.front();
  const double mr_si0 = std::norm(s0.a_s) - std::norm(s0.a_i);
  const double mr_sp0 = std::norm(s0.a_s) + std::norm(s0.a_p);
  const double total = std::norm(s0.a_s) + std::norm(s0.a_i) + std::norm(s0.a_p);
  auto c1_of = [](const TwmState& s) {
    return (s.a_p * std::conj(s.a_s) * std::conj(s.a_i)).real();
  };
  const double c10 = c1_of(s0);

  DriftMetrics d;
  double rrr_max = 0.0;
  for (const auto& s : traj.states)
    rrr_max = std::max(rrr_max, std::abs(s.a_s) * std::abs(s.a_i) * std::abs(s.a_p));
  for (const auto& s : traj.states) {
    d.manley_rowe_si = std::max(d.manley_rowe_si, std::abs(std::norm(s.a_s) - std::norm(s.a_i) - mr_si0));
    d.manley_rowe_sp = std::max(d.manley_rowe_sp, std::abs(std::norm(s.a_s) + std::norm(s.a_p) - mr_sp0));
    d.c1 = std::max(d.c1, std::abs(c1_of(s) - c10));
  }
  if (total > 0.0) {
    d.manley_rowe_si /= total;
    d.manley_rowe_sp /= total;
  }
  if (rrr_max > 0.0) d.c1 /= rrr_max;
  return d;
}

}  // namespace pairwise
