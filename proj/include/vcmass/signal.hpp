#pragma once

#include <vector>

#include <Eigen/Core>

namespace vcmass {

/// Classic symmetric Blackman window of length n:
/// w_i = 0.42 - 0.5 cos(2πi/(n-1)) + 0.08 cos(4πi/(n-1)).
/// Endpoints evaluate to 0.42 - 0.5 + 0.08 and the center of an odd-length
/// window to 0.42 + 0.5 + 0.08, bit-for-bit.
Eigen::VectorXd blackman_window(int n);

/// One output bin of the windowed transform.
struct SpectrumLine {
  double freq_hz = 0.0;
  double magnitude = 0.0;
};

/// Blackman-windowed discrete Fourier magnitudes of a uniformly sampled
/// series, bins 0..n/2 with freq_hz = k/(n·dt). Plain O(n²) evaluation.
/// Requires at least 8 samples with uniform spacing (1e-9 relative);
/// violations throw invalid-argument.
std::vector<SpectrumLine> dft_blackman(const std::vector<double>& times,
                                       const std::vector<double>& samples);

}  // namespace vcmass
