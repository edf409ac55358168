#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "pairwise/constants.hpp"

namespace pairwise {

// splitmix64 finalizer; used to derive independent substream seeds from
// (seed, index) so parallel realizations stay reproducible.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x632be59bd9b4e019ull));
}

// Gaussian draws via explicit Box-Muller on top of mt19937_64. The standard
// does not pin the algorithm of std::normal_distribution, so this keeps
// sampled fields bit-identical across standard libraries.
class NoiseRng {
 public:
  explicit NoiseRng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }  // [0,1)

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0,1], keeps log() finite
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

  // circular complex gaussian with E|z|^2 = variance
  std::complex<double> circular(double variance) {
    double s = std::sqrt(0.5 * variance);
    double re = gaussian();
    double im = gaussian();
    return {s * re, s * im};
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace pairwise
