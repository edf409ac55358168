#include "pairwise/crystal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pairwise/constants.hpp"

namespace pairwise {

namespace {

double eval_n(const CrystalModel& c, double lambda_um) {
  const auto& a = c.coeff;
  switch (c.form) {
    case SellmeierForm::constant_n:
      if (a.size() != 1) throw std::invalid_argument("crystal " + c.name + ": constant_n needs 1 coefficient");
      return a[0];
    case SellmeierForm::polynomial: {
      if (a.empty()) throw std::invalid_argument("crystal " + c.name + ": polynomial needs coefficients");
      double n = 0.0;
      for (std::size_t k = a.size(); k-- > 0;) n = n * lambda_um + a[k];
      return n;
    }
    case SellmeierForm::two_pole: {
      if (a.size() != 5) throw std::invalid_argument("crystal " + c.name + ": two_pole needs 5 coefficients");
      double L2 = lambda_um * lambda_um;
      return std::sqrt(a[0] + a[1] / (L2 - a[2]) + a[3] / (L2 - a[4]));
    }
    case SellmeierForm::one_pole_lambda2: {
      if (a.size() != 4) throw std::invalid_argument("crystal " + c.name + ": one_pole_lambda2 needs 4 coefficients");
      double L2 = lambda_um * lambda_um;
      return std::sqrt(a[0] + a[1] / (L2 - a[2]) - a[3] * L2);
    }
  }
  throw std::logic_error("eval_n: unknown form");
}

void check_range(const CrystalModel& c, double lambda_m) {
  if (lambda_m < c.valid_lo || lambda_m > c.valid_hi) {
    std::ostringstream msg;
    msg << "crystal " << c.name << ": wavelength " << lambda_m * 1e9 << " nm outside validity range ["
        << c.valid_lo * 1e9 << ", " << c.valid_hi * 1e9 << "] nm";
    throw std::out_of_range(msg.str());
  }
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// |dk| l / 2 bound for a given criterion (bisection for threshold_flat)
double criterion_bound(BandCriterion criterion, double flat_ratio) {
  switch (criterion) {
    case BandCriterion::sinc_first_zero:
      return pi;
    case BandCriterion::sinc_half_max:
    case BandCriterion::threshold_flat: {
      double target = criterion == BandCriterion::sinc_half_max ? 0.5 : 1.0 / flat_ratio;
      if (target <= 0.0 || target >= 1.0)
        throw std::invalid_argument("pm_band: flat_ratio must be > 1");
      double lo = 0.0, hi = pi;
      for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double s = sinc(mid);
        (s * s >= target ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
  }
  throw std::logic_error("criterion_bound: unknown criterion");
}

double idler_wavelength(double lambda_signal, double lambda_pump) {
  double inv = 1.0 / lambda_pump - 1.0 / lambda_signal;
  if (inv <= 0.0) throw std::invalid_argument("delta_k: nonphysical idler (1/l_i <= 0)");
  return 1.0 / inv;
}

}  // namespace

double refractive_index(const CrystalModel& c, double lambda_m) {
  if (c.provenance.empty())
    throw std::invalid_argument("crystal " + c.name + ": refusing to evaluate unprovenanced coefficients");
  check_range(c, lambda_m);
  double n = eval_n(c, lambda_m * 1e6);
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::out_of_range("crystal " + c.name + ": index not finite/positive at given wavelength");
  return n;
}

double index_second_derivative(const CrystalModel& c, double lambda_m) {
  const double h = 1e-3 * lambda_m;
  double np = refractive_index(c, lambda_m + h);
  double n0 = refractive_index(c, lambda_m);
  double nm = refractive_index(c, lambda_m - h);
  return (np - 2.0 * n0 + nm) / (h * h);
}

double delta_k(const CrystalModel& c, double lambda_signal_m, double lambda_pump_m) {
  double lambda_i = idler_wavelength(lambda_signal_m, lambda_pump_m);
  double np = refractive_index(c, lambda_pump_m);
  double ns = refractive_index(c, lambda_signal_m);
  double ni = refractive_index(c, lambda_i);
  double dk = two_pi * (np / lambda_pump_m - ns / lambda_signal_m - ni / lambda_i);
  if (c.qpm_period) dk -= two_pi / *c.qpm_period;
  return dk;
}

double solve_qpm_period(const CrystalModel& c, double lambda_pump_m) {
  CrystalModel bare = c;
  bare.qpm_period.reset();
  double dk0 = delta_k(bare, 2.0 * lambda_pump_m, lambda_pump_m);
  if (dk0 == 0.0) throw std::invalid_argument("solve_qpm_period: already phase matched without QPM");
  return two_pi / dk0;
}

MismatchCurve mismatch_curve(const CrystalModel& c, double lambda_pump_m,
                             std::span<const double> lambda_signal_m) {
  MismatchCurve out;
  for (double ls : lambda_signal_m) {
    out.wavelength.push_back(ls);
    out.delta_k.push_back(delta_k(c, ls, lambda_pump_m));
  }
  return out;
}

Band pm_band(const CrystalModel& c, double lambda_pump_m, BandCriterion criterion, double flat_ratio) {
  if (c.length <= 0.0) throw std::invalid_argument("pm_band: crystal length must be positive");
  const double bound = criterion_bound(criterion, flat_ratio);
  const double lambda_deg = 2.0 * lambda_pump_m;
  auto ok = [&](double ls) {
    if (ls <= lambda_pump_m) return false;
    double li = idler_wavelength(ls, lambda_pump_m);
    if (ls < c.valid_lo || ls > c.valid_hi || li < c.valid_lo || li > c.valid_hi) return false;
    return std::abs(delta_k(c, ls, lambda_pump_m)) * c.length / 2.0 <= bound;
  };
  if (!ok(lambda_deg)) throw std::runtime_error("pm_band: no phase-matched point at degeneracy");

  // walk outwards in small steps, then refine the edges by bisection
  const double step = 1e-4 * lambda_deg;
  double hi = lambda_deg;
  while (ok(hi + step)) hi += step;
  double hi_in = hi, hi_out = hi + step;
  if (!ok(hi_out)) {
    for (int i = 0; i < 60; ++i) {
      double mid = 0.5 * (hi_in + hi_out);
      (ok(mid) ? hi_in : hi_out) = mid;
    }
  }
  double lo = lambda_deg;
  while (ok(lo - step)) lo -= step;
  double lo_in = lo, lo_out = lo - step;
  if (!ok(lo_out)) {
    for (int i = 0; i < 60; ++i) {
      double mid = 0.5 * (lo_in + lo_out);
      (ok(mid) ? lo_in : lo_out) = mid;
    }
  }
  return Band{lo_in, hi_in};
}

double find_zero_dispersion_pump(const CrystalModel& c) {
  const double margin = 2e-3;  // keep the finite-difference stencil in range
  double lo = c.valid_lo * (1.0 + margin);
  double hi = c.valid_hi * (1.0 - margin);
  if (lo >= hi) throw std::invalid_argument("find_zero_dispersion_pump: empty validity range");

  const int n = 400;
  double prev_x = lo, prev_f = index_second_derivative(c, lo);
  double root = 0.0;
  bool found = false;
  for (int i = 1; i <= n; ++i) {
    double x = lo + (hi - lo) * i / n;
    double f = index_second_derivative(c, x);
    if (prev_f == 0.0) {
      root = prev_x;
      found = true;
      break;
    }
    if (prev_f * f < 0.0) {
      double a = prev_x, b = x, fa = prev_f;
      for (int k = 0; k < 80; ++k) {
        double m = 0.5 * (a + b);
        double fm = index_second_derivative(c, m);
        if (fa * fm <= 0.0)
          b = m;
        else {
          a = m;
          fa = fm;
        }
      }
      root = 0.5 * (a + b);
      found = true;
      break;
    }
    prev_x = x;
    prev_f = f;
  }
  if (!found)
    throw std::runtime_error("find_zero_dispersion_pump: d2n/dlambda2 has no sign change inside the validity range");
  return 0.5 * root;
}

namespace {

// fitted quadratic coefficient of dk as a function of the signal detuning
// (rad/s) about degeneracy, using a symmetric 5-point sample
double quad_coeff(const CrystalModel& c, double lambda_pump_m) {
  CrystalModel local = c;
  local.qpm_period = solve_qpm_period(c, lambda_pump_m);
  const double lambda_deg = 2.0 * lambda_pump_m;
  const double w_deg = two_pi * c_light / lambda_deg;
  const double dw = 1e-4 * w_deg;
  // even part at two lags; fit dk = c2 d^2 + c4 d^4 exactly through them
  auto dk_at = [&](double d) {
    double ls = two_pi * c_light / (w_deg + d);
    return delta_k(local, ls, lambda_pump_m);
  };
  double e1 = 0.5 * (dk_at(dw) + dk_at(-dw));
  double e2 = 0.5 * (dk_at(2.0 * dw) + dk_at(-2.0 * dw));
  // e1 = c2 h^2 + c4 h^4; e2 = 4 c2 h^2 + 16 c4 h^4 -> c2 = (16 e1 - e2)/(12 h^2)
  return (16.0 * e1 - e2) / (12.0 * dw * dw);
}

}  // namespace

double ZeroDispersionCheck::ratio() const {
  return quad_coeff_ref == 0.0 ? 0.0 : std::abs(quad_coeff / quad_coeff_ref);
}

ZeroDispersionCheck check_zero_dispersion(const CrystalModel& c, double lambda_pump_m) {
  ZeroDispersionCheck out;
  out.pump = lambda_pump_m;
  out.quad_coeff = quad_coeff(c, lambda_pump_m);
  // reference pump: degeneracy displaced by a tenth of the validity span
  double shift = 0.05 * (c.valid_hi - c.valid_lo);
  double ref_deg = 2.0 * lambda_pump_m + shift;
  if (ref_deg > c.valid_hi * (1.0 - 2e-3)) ref_deg = 2.0 * lambda_pump_m - shift;
  out.quad_coeff_ref = quad_coeff(c, 0.5 * ref_deg);
  return out;
}

ThresholdCurve threshold_curve(const CrystalModel& c, double lambda_pump_m,
                               std::span<const double> lambda_signal_m) {
  if (c.length <= 0.0 || c.chi <= 0.0 || c.loss_T <= 0.0)
    throw std::invalid_argument("threshold_curve: need positive length, chi and loss");
  ThresholdCurve out;
  out.absolute_minimum =
      c.loss_T * c.loss_T / (4.0 * c.chi * c.chi * c.length * c.length);
  double min_val = 0.0;
  for (double ls : lambda_signal_m) {
    double s = sinc(delta_k(c, ls, lambda_pump_m) * c.length / 2.0);
    double v = 1.0 / (s * s);
    out.wavelength.push_back(ls);
    out.relative_intensity.push_back(v);
    if (min_val == 0.0 || v < min_val) min_val = v;
  }
  for (auto& v : out.relative_intensity) v /= min_val;
  return out;
}

CrystalModel load_crystal(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_crystal: cannot open " + path);
  CrystalModel c;
  bool have_form = false, have_valid = false;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "name") {
      c.name = value;
    } else if (key == "formula") {
      if (value == "constant_n")
        c.form = SellmeierForm::constant_n;
      else if (value == "polynomial")
        c.form = SellmeierForm::polynomial;
      else if (value == "two_pole")
        c.form = SellmeierForm::two_pole;
      else if (value == "one_pole_lambda2")
        c.form = SellmeierForm::one_pole_lambda2;
      else
        throw std::runtime_error("load_crystal: unknown formula id '" + value + "' in " + path);
      have_form = true;
    } else if (key == "coefficients") {
      std::istringstream ss(value);
      double v;
      c.coeff.clear();
      while (ss >> v) c.coeff.push_back(v);
    } else if (key == "valid_um") {
      std::istringstream ss(value);
      double lo, hi;
      if (!(ss >> lo >> hi) || lo <= 0.0 || hi <= lo)
        throw std::runtime_error("load_crystal: bad valid_um in " + path);
      c.valid_lo = lo * 1e-6;
      c.valid_hi = hi * 1e-6;
      have_valid = true;
    } else if (key == "provenance") {
      c.provenance = value;
    } else if (key == "length_mm") {
      c.length = std::stod(value) * 1e-3;
    } else if (key == "qpm_period_um") {
      c.qpm_period = std::stod(value) * 1e-6;
    } else if (key == "chi") {
      c.chi = std::stod(value);
    } else if (key == "loss_T") {
      c.loss_T = std::stod(value);
    } else {
      throw std::runtime_error("load_crystal: unknown key '" + key + "' in " + path);
    }
  }
  if (c.provenance.empty())
    throw std::runtime_error("load_crystal: " + path + " has no provenance entry; refusing to load");
  if (!have_form || c.coeff.empty() || !have_valid)
    throw std::runtime_error("load_crystal: " + path + " is missing formula, coefficients or valid_um");
  return c;
}

}  // namespace pairwise
