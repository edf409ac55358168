#pragma once

#include <complex>
#include <vector>

namespace pairwise {

// Coupled three-wave mixing amplitudes along the crystal:
//   dA_s/dz = -i k A_i* A_p e^{+i dk z}
//   dA_i/dz = -i k A_s* A_p e^{+i dk z}
//   dA_p/dz = -i k A_s A_i  e^{-i dk z}
// dk = 0 recovers the lossless phase-matched system with its conserved
// quantities (Manley-Rowe differences and C1 = R_s R_i R_p cos(dtheta)).
struct TwmState {
  std::complex<double> a_s;
  std::complex<double> a_i;
  std::complex<double> a_p;
};

struct TwmTrajectory {
  std::vector<double> z;
  std::vector<TwmState> states;
  double kappa = 0.0;
  double delta_k = 0.0;
};

// Adaptive embedded Runge-Kutta integration (relative tolerance rel_tol, the
// conserved quantities act as an independent accuracy monitor).
TwmTrajectory integrate_twm(const TwmState& initial, double kappa, double z_end,
                            double rel_tol = 1e-10, double delta_k = 0.0);

// Fixed-step classical RK4; used for convergence-order checks.
TwmTrajectory integrate_twm_fixed(const TwmState& initial, double kappa, double z_end, int steps,
                                  double delta_k = 0.0);

// dtheta(z) = theta_p - theta_s - theta_i in (-pi, pi], computed directly
// from arg(A_p A_s* A_i*); points where any amplitude falls below amp_floor
// are reported as NaN (phase undefined at zero amplitude).
std::vector<double> phase_sum(const TwmTrajectory& traj, double amp_floor = 0.0);

// Max drift of the conserved quantities along the trajectory, normalized:
// the Manley-Rowe combinations to the total initial power, C1 to the largest
// R_s R_i R_p along the way (the scale at which cos(dtheta) is read off).
struct DriftMetrics {
  double manley_rowe_si = 0.0;  // |A_s|^2 - |A_i|^2
  double manley_rowe_sp = 0.0;  // |A_s|^2 + |A_p|^2
  double c1 = 0.0;              // R_s R_i R_p cos(dtheta)
};
DriftMetrics conserved_drift(const TwmTrajectory& traj);

}  // namespace pairwise
