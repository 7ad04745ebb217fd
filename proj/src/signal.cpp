#include "vcmass/signal.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace vcmass {

Eigen::VectorXd blackman_window(int n) {
  if (n < 2) throw std::invalid_argument("blackman_window: need at least 2 samples");
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / (n - 1);
    w[i] = 0.42 - 0.5 * std::cos(a) + 0.08 * std::cos(2.0 * a);
  }
  return w;
}

std::vector<SpectrumLine> dft_blackman(const std::vector<double>& times,
                                       const std::vector<double>& samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 8) throw std::invalid_argument("dft_blackman: need at least 8 samples");
  if (times.size() != samples.size())
    throw std::invalid_argument("dft_blackman: times and samples differ in length");
  const double dt = times[1] - times[0];
  if (dt <= 0.0) throw std::invalid_argument("dft_blackman: times must increase");
  for (int i = 1; i < n; ++i)
    if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * dt)
      throw std::invalid_argument("dft_blackman: non-uniform sampling");

  const Eigen::VectorXd w = blackman_window(n);
  std::vector<SpectrumLine> out(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double phase = -2.0 * std::numbers::pi * j * k / n;
      acc += w[j] * samples[j] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    out[k] = {k / (n * dt), std::abs(acc)};
  }
  return out;
}

}  // namespace vcmass
