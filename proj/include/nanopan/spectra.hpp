#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nanopan/least_squares.hpp"

namespace nanopan {

enum class XKind { Wavelength, FrequencyDetuning };

/// Sampled (x, counts) data; x in meters (wavelength) or Hz (detuning).
struct Spectrum {
  std::vector<double> x;
  std::vector<double> counts;
  XKind x_kind = XKind::Wavelength;

  void validate(std::size_t min_len = 2) const;
};

/// Sampled photon-counting decay trace; t in seconds.
struct TimeTrace {
  std::vector<double> t;
  std::vector<double> counts;

  void validate(std::size_t min_len = 2) const;
};

struct LorentzPeak {
  double center = 0.0;
  double fwhm = 0.0;
  double amplitude = 0.0;  // peak height above baseline
  double center_stderr = 0.0;
  double fwhm_stderr = 0.0;
  double amplitude_stderr = 0.0;
};

struct LorentzianFit {
  std::vector<LorentzPeak> peaks;  // sorted by center
  double baseline = 0.0;
  double baseline_stderr = 0.0;
  double residual_norm = 0.0;  // sqrt(sum of squared residuals)
  int iterations = 0;
  bool degenerate_peaks = false;  // centers closer than one sample spacing
  Eigen::MatrixXd covariance;
};

struct ExpDecayFit {
  double tau = 0.0;  // [s]
  double amplitude = 0.0;
  double baseline = 0.0;
  double stderr_tau = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
};

/// Thrown when a fit fails to converge or the data is degenerate.
class fit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares fit of baseline + sum_k amp_k (G_k/2)^2/((x-x0_k)^2+(G_k/2)^2).
/// n_peaks is 1 or 2. When init is absent, seeds are derived from the data:
/// centers from the n_peaks largest local maxima of a 5-sample moving
/// average, FWHM = half the inter-quartile x support, baseline = 5th
/// percentile of counts.
LorentzianFit fit_lorentzian(const Spectrum& s, int n_peaks,
                             const std::optional<std::vector<double>>& init = std::nullopt);

/// Q = center / fwhm of a fitted line.
double q_from_fit(double center, double fwhm);

/// Least-squares fit of baseline + A exp(-t/tau).
ExpDecayFit fit_exp_decay(const TimeTrace& trace,
                          const std::optional<std::vector<double>>& init = std::nullopt);

}  // namespace nanopan
