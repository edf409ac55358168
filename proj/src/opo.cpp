#include "pairwise/opo.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pairwise/rng.hpp"

namespace pairwise {

double LineSpectrum::total_power() const {
  double s = 0.0;
  for (const auto& p : pairs) s += p.power;
  return s;
}

std::complex<double> loss_amplitude(const LineSpectrum& spectrum, double gamma) {
  std::complex<double> f{0.0, 0.0};
  for (const auto& p : spectrum.pairs) f += p.power * std::polar(1.0, gamma * p.detuning * p.detuning);
  return f;
}

double efficiency(double pump_ratio, double r) {
  double rr[1] = {r};
  return efficiency_multi(pump_ratio, rr);
}

double efficiency_multi(double pump_ratio, std::span<const double> r) {
  if (pump_ratio < 1.0) throw std::invalid_argument("efficiency: pump ratio N must be >= 1");
  double sum_r2 = 0.0;
  for (double v : r) {
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("efficiency: r must be in [0, 1]");
    sum_r2 += v * v;
  }
  return 4.0 / (1.0 + sum_r2) * (std::sqrt(pump_ratio) - 1.0) / pump_ratio;
}

double total_tax(const LineSpectrum& spectrum, std::span<const double> gammas) {
  double tax = 0.0;
  for (double g : gammas) tax += std::norm(loss_amplitude(spectrum, g));
  return tax;
}

double threshold_intensity(double loss_T, double chi, double length) {
  if (loss_T <= 0.0 || chi <= 0.0 || length <= 0.0)
    throw std::invalid_argument("threshold_intensity: all arguments must be positive");
  return loss_T * loss_T / (4.0 * chi * chi * length * length);
}

namespace {

struct Objective {
  std::span<const double> gammas;
  double band_lo, band_hi;

  double operator()(const LineSpectrum& s) const {
    double tax = 0.0;
    for (double g : gammas) tax += std::norm(loss_amplitude(s, g));
    return tax;
  }
};

// golden-section line search of tax over one pair's detuning
double best_detuning(const Objective& obj, LineSpectrum s, std::size_t k) {
  const double gr = 0.6180339887498949;
  double a = obj.band_lo, b = obj.band_hi;
  auto eval = [&](double d) {
    s.pairs[k].detuning = d;
    return obj(s);
  };
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  for (int i = 0; i < 80; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = eval(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

// exact rescale of powers onto the simplex sum = budget, keeping p >= 0
void project_powers(LineSpectrum& s, double budget) {
  double total = s.total_power();
  if (total <= 0.0) {
    for (auto& p : s.pairs) p.power = budget / double(s.pairs.size());
    return;
  }
  for (auto& p : s.pairs) p.power *= budget / total;
}

// Gauss-Newton steps on the residual vector [Re F(g_n), Im F(g_n)] over
// (detunings, powers); powers renormalized after every step. Refines a basin
// found by the coordinate stage down to machine precision when a zero-tax
// solution exists there.
void polish(const Objective& obj, LineSpectrum& s, double budget) {
  const int kp = static_cast<int>(s.pairs.size());
  const int nres = 2 * static_cast<int>(obj.gammas.size());
  const int nvar = 2 * kp;
  Eigen::MatrixXd J(nres, nvar);
  Eigen::VectorXd res(nres);
  for (int iter = 0; iter < 60; ++iter) {
    for (std::size_t n = 0; n < obj.gammas.size(); ++n) {
      auto f = loss_amplitude(s, obj.gammas[n]);
      res[2 * n] = f.real();
      res[2 * n + 1] = f.imag();
      for (int k = 0; k < kp; ++k) {
        double d = s.pairs[k].detuning, p = s.pairs[k].power, g = obj.gammas[n];
        auto e = std::polar(1.0, g * d * d);
        // d/d(detuning): p * i g 2 d e ; d/d(power): e
        std::complex<double> dd = p * std::complex<double>{0.0, 2.0 * g * d} * e;
        J(2 * n, k) = dd.real();
        J(2 * n + 1, k) = dd.imag();
        J(2 * n, kp + k) = e.real();
        J(2 * n + 1, kp + k) = e.imag();
      }
    }
    double before = res.squaredNorm();
    if (before < 1e-28 * budget * budget) break;
    Eigen::VectorXd step = (J.transpose() * J + 1e-12 * Eigen::MatrixXd::Identity(nvar, nvar))
                               .ldlt()
                               .solve(J.transpose() * res);
    // backtracking on the tax
    double lambda = 1.0;
    LineSpectrum trial = s;
    for (int bt = 0; bt < 20; ++bt) {
      trial = s;
      for (int k = 0; k < kp; ++k) {
        trial.pairs[k].detuning =
            std::clamp(s.pairs[k].detuning - lambda * step[k], obj.band_lo, obj.band_hi);
        trial.pairs[k].power = std::max(0.0, s.pairs[k].power - lambda * step[kp + k]);
      }
      project_powers(trial, budget);
      if (obj(trial) < before) break;
      lambda *= 0.5;
    }
    if (obj(trial) >= before) break;
    s = trial;
  }
}

}  // namespace

OptimizeResult optimize_spectrum(std::span<const double> gammas, int max_pairs, double power_budget,
                                 std::uint64_t seed, double band_lo, double band_hi) {
  if (max_pairs < 1) throw std::invalid_argument("optimize_spectrum: need at least one pair");
  if (power_budget <= 0.0) throw std::invalid_argument("optimize_spectrum: power budget must be positive");
  if (!(band_hi > band_lo) || band_lo < 0.0)
    throw std::invalid_argument("optimize_spectrum: need 0 <= band_lo < band_hi");

  OptimizeResult result;
  if (gammas.empty()) {
    // no loss medium: any spectrum is optimal
    result.spectrum.pairs.resize(max_pairs);
    for (int k = 0; k < max_pairs; ++k) {
      double frac = (k + 1.0) / (max_pairs + 1.0);
      result.spectrum.pairs[k] = {band_lo + frac * (band_hi - band_lo), power_budget / max_pairs};
    }
    result.tax = 0.0;
    result.normalized_tax = 0.0;
    result.history = {0.0};
    return result;
  }

  Objective obj{gammas, band_lo, band_hi};
  const int n_starts = 12;
  double best_tax = -1.0;

  for (int start = 0; start < n_starts; ++start) {
    NoiseRng rng(derive_seed(seed, start));
    LineSpectrum s;
    s.pairs.resize(max_pairs);
    for (auto& p : s.pairs)
      p = {band_lo + (band_hi - band_lo) * rng.uniform(), power_budget / max_pairs};

    double current = obj(s);
    std::vector<double> local_history{current};
    // coordinate descent with annealed random kicks, monotone acceptance
    for (int sweep = 0; sweep < 40; ++sweep) {
      for (std::size_t k = 0; k < s.pairs.size(); ++k) {
        LineSpectrum trial = s;
        trial.pairs[k].detuning = best_detuning(obj, trial, k);
        double t = obj(trial);
        if (t < current) {
          s = trial;
          current = t;
        }
      }
      // power reshuffle between a random pair of pairs
      if (s.pairs.size() > 1) {
        std::size_t i = std::size_t(rng.uniform() * s.pairs.size()) % s.pairs.size();
        std::size_t j = std::size_t(rng.uniform() * s.pairs.size()) % s.pairs.size();
        if (i != j) {
          LineSpectrum trial = s;
          double shift = (rng.uniform() - 0.5) * trial.pairs[i].power;
          shift = std::max(shift, -trial.pairs[j].power);
          trial.pairs[i].power -= shift;
          trial.pairs[j].power += shift;
          if (trial.pairs[i].power >= 0.0 && trial.pairs[j].power >= 0.0) {
            double t = obj(trial);
            if (t < current) {
              s = trial;
              current = t;
            }
          }
        }
      }
      // annealed kick: shrinking random detuning perturbation
      double amp = (band_hi - band_lo) * std::exp(-3.0 * sweep / 40.0) * 0.1;
      LineSpectrum kicked = s;
      for (auto& p : kicked.pairs)
        p.detuning = std::clamp(p.detuning + amp * (2.0 * rng.uniform() - 1.0), band_lo, band_hi);
      double t = obj(kicked);
      if (t < current) {
        s = kicked;
        current = t;
      }
      local_history.push_back(current);
    }
    polish(obj, s, power_budget);
    current = obj(s);
    local_history.push_back(current);

    if (best_tax < 0.0 || current < best_tax) {
      best_tax = current;
      result.spectrum = s;
      result.history = local_history;
    }
  }

  result.tax = best_tax;
  const double f0 = result.spectrum.total_power();
  result.normalized_tax = f0 > 0.0 ? best_tax / (f0 * f0) : 0.0;
  return result;
}

EfficiencyTable efficiency_curve(std::span<const double> pump_ratios, std::span<const double> gammas,
                                 int budget_pairs, std::uint64_t seed) {
  EfficiencyTable table;
  // narrow and ideal are the single-loss-medium limits (r = 1 and r = 0);
  // the practical curve carries the residual tax of a finite line budget
  // against the full gamma set and is qualitative by construction
  std::vector<double> r_practical(gammas.size(), 0.0);
  if (!gammas.empty()) {
    double gmax = 0.0;
    for (double g : gammas) gmax = std::max(gmax, std::abs(g));
    double band_hi = gmax > 0.0 ? std::sqrt(two_pi / gmax) : 1.0;
    auto opt = optimize_spectrum(gammas, budget_pairs, 1.0, seed, 0.05 * band_hi, band_hi);
    double f0 = opt.spectrum.total_power();
    for (std::size_t n = 0; n < gammas.size(); ++n)
      r_practical[n] = std::min(1.0, std::abs(loss_amplitude(opt.spectrum, gammas[n])) / f0);
  }

  for (double n : pump_ratios) {
    table.pump_ratio.push_back(n);
    table.narrow.push_back(efficiency(n, 1.0));
    table.ideal.push_back(efficiency(n, 0.0));
    table.practical.push_back(efficiency_multi(n, r_practical));
  }
  return table;
}

}  // namespace pairwise
