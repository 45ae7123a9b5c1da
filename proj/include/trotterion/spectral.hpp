#pragma once

#include "trotterion/oracle.hpp"

#include <string>
#include <vector>

namespace trotterion {

struct ObservableTrace {
  double theta0 = 0.0;
  double dtheta = 0.0;
  std::vector<double> values;
  std::string label;

  /// Throws if the grid spacing varies by more than 1e-12 (relative).
  static ObservableTrace from_grid(const std::vector<double>& thetas, std::vector<double> values, std::string label = {});
};

struct SpectrumOptions {
  std::size_t zero_pad_factor = 1;
  bool hann_window = false;
};

/// One-sided magnitude spectrum of the mean-subtracted trace; a component
/// cos(ΔE·θ) appears at frequency ΔE.
struct TraceSpectrum {
  std::vector<double> frequency;
  std::vector<double> amplitude;
  double bin_width = 0.0;           // spacing of the returned grid
  double unpadded_bin_width = 0.0;  // 2π / (N Δθ)

  std::size_t dominant_bin() const;
  double dominant_frequency() const { return frequency[dominant_bin()]; }
  /// Local maxima above `relative` times the largest amplitude.
  std::vector<std::size_t> peaks(double relative) const;
};

TraceSpectrum spectrum_of_trace(const ObservableTrace& trace, const SpectrumOptions& options = {});

struct Gap {
  double gap = 0.0;
  double weight = 0.0;
};

/// Pairwise level differences among levels populated above tol, weighted by
/// the product of their populations, sorted by gap.
std::vector<Gap> predicted_gaps(const WeightedPauliSum& h, const StateVector& psi0, double tol = 1e-9);

}  // namespace trotterion
