#include "pairwise/fft.hpp"

#include <fftw3.h>

namespace pairwise {

std::vector<cdouble> dft(const std::vector<cdouble>& in, bool inverse) {
  const int n = static_cast<int>(in.size());
  std::vector<cdouble> out(in.size());
  if (n == 0) return out;
  // std::complex<double> is layout-compatible with fftw_complex
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<cdouble*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan = fftw_plan_dft_1d(n, src, dst, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                    FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

std::vector<cdouble> autoconvolve(const std::vector<cdouble>& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  std::vector<cdouble> padded(2 * n, cdouble{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) padded[j] = a[j];
  auto fa = dft(padded, false);
  for (auto& v : fa) v *= v;
  auto c = dft(fa, true);
  std::vector<cdouble> out(2 * n - 1);
  const double norm = 1.0 / double(2 * n);
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = c[m] * norm;
  return out;
}

}  // namespace pairwise
