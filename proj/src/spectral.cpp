#include "trotterion/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>

namespace trotterion {

ObservableTrace ObservableTrace::from_grid(const std::vector<double>& thetas, std::vector<double> values, std::string label) {
  if (thetas.size() != values.size()) throw std::invalid_argument("trace grid and values differ in length");
  if (thetas.size() < 2) throw std::invalid_argument("trace needs at least two points");
  const double d = thetas[1] - thetas[0];
  if (!(d > 0.0)) throw std::invalid_argument("trace grid must be increasing");
  for (std::size_t k = 2; k < thetas.size(); ++k) {
    if (std::abs((thetas[k] - thetas[k - 1]) - d) > 1e-12 * std::max(1.0, std::abs(thetas[k]))) {
      throw std::invalid_argument("trace grid is not uniform");
    }
  }
  return {thetas[0], d, std::move(values), std::move(label)};
}

std::size_t TraceSpectrum::dominant_bin() const {
  if (amplitude.size() < 2) throw std::logic_error("spectrum has no non-zero frequency bins");
  return static_cast<std::size_t>(std::max_element(amplitude.begin() + 1, amplitude.end()) - amplitude.begin());
}

std::vector<std::size_t> TraceSpectrum::peaks(double relative) const {
  std::vector<std::size_t> out;
  if (amplitude.size() < 2) return out;
  const double top = *std::max_element(amplitude.begin() + 1, amplitude.end());
  for (std::size_t k = 1; k < amplitude.size(); ++k) {
    const double left = amplitude[k - 1];
    const double right = k + 1 < amplitude.size() ? amplitude[k + 1] : 0.0;
    if (amplitude[k] >= left && amplitude[k] >= right && amplitude[k] > relative * top && amplitude[k] > 0.0) {
      out.push_back(k);
    }
  }
  return out;
}

TraceSpectrum spectrum_of_trace(const ObservableTrace& trace, const SpectrumOptions& options) {
  const std::size_t n = trace.values.size();
  if (n < 8) throw std::invalid_argument("trace needs at least 8 points");
  if (!(trace.dtheta > 0.0)) throw std::invalid_argument("trace spacing must be positive");
  if (options.zero_pad_factor == 0) throw std::invalid_argument("zero padding factor must be at least 1");
  double mean = 0.0;
  for (double v : trace.values) mean += v;
  mean /= static_cast<double>(n);

  const std::size_t padded = n * options.zero_pad_factor;
  std::vector<double> x(padded, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double w = 1.0;
    if (options.hann_window) w = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(n - 1));
    x[k] = w * (trace.values[k] - mean);
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> bins;
  fft.fwd(bins, x);

  TraceSpectrum s;
  s.bin_width = 2.0 * kPi / (static_cast<double>(padded) * trace.dtheta);
  s.unpadded_bin_width = 2.0 * kPi / (static_cast<double>(n) * trace.dtheta);
  for (std::size_t k = 0; k <= padded / 2; ++k) {
    s.frequency.push_back(s.bin_width * static_cast<double>(k));
    s.amplitude.push_back(2.0 * std::abs(bins[k]) / static_cast<double>(n));
  }
  return s;
}

std::vector<Gap> predicted_gaps(const WeightedPauliSum& h, const StateVector& psi0, double tol) {
  const auto spec = spectrum(h);
  const auto pops = level_populations(psi0, spec);
  std::vector<Gap> gaps;
  for (std::size_t a = 0; a < pops.size(); ++a) {
    if (pops[a] <= tol) continue;
    for (std::size_t b = a + 1; b < pops.size(); ++b) {
      if (pops[b] <= tol) continue;
      gaps.push_back({spec.levels[b].energy - spec.levels[a].energy, pops[a] * pops[b]});
    }
  }
  std::sort(gaps.begin(), gaps.end(), [](const Gap& x, const Gap& y) { return x.gap < y.gap; });
  return gaps;
}

}  // namespace trotterion
