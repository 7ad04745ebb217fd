#pragma once

#include <utility>
#include <vector>

#include "vcmass/analytic.hpp"
#include "vcmass/eigensolve.hpp"
#include "vcmass/space.hpp"

namespace vcmass {

/// Aligns numerical modes with analytic ones: walking the analytic family in
/// ascending order, each analytic eigenfunction claims the unclaimed
/// numerical eigenfunction with the smallest L² distance (after
/// normalization, minimized over the ± sign). Returns the assignment and
/// stores it in spectrum.matched. Eigenvectors are given in the reduced
/// numbering of the space's Dirichlet mask.
std::vector<int> match_modes(Spectrum& spectrum, const AnalyticEigenFamily& family,
                             const DiscreteSpace& space);

/// Frequency-ratio curve over the normalized mode number: for analytic mode
/// a (1-based position among N matched modes) emits
/// (a/N, sqrt(λ_h[matched[a]] / λ_a)). Requires match_modes to have run.
std::vector<std::pair<double, double>> normalized_spectrum(const Spectrum& spectrum,
                                                           const AnalyticEigenFamily& family);

}  // namespace vcmass
