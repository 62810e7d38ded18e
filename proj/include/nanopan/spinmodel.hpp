#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "nanopan/purcell.hpp"
#include "nanopan/spectra.hpp"

namespace nanopan {

/// Rates and linewidths of the spin-dependent optical cycle.
struct SpinParams {
  double d_gs_2 = 0.0;        // ground zero-field splitting 2*D_gs [Hz]
  double d_es_2 = 0.0;        // excited zero-field splitting 2*D_es [Hz]
  double gamma_rad = 0.0;     // radiative decay rate 1/tau [1/s]
  double isc_rate = 0.0;      // excited -> shelf [1/s]
  double shelf_decay = 0.0;   // shelf -> ground (total) [1/s]
  double mw_rate = 0.0;       // ground-manifold mixing [1/s], 0 = MW off
  double opt_linewidth = 0.0; // homogeneous optical FWHM [Hz]
  double diffusion_sigma = 0.0;  // Gaussian spectral-diffusion std dev [Hz]
  double pump_rate_peak = 0.0;   // on-resonance excitation rate [1/s]

  void validate() const;
};

// Level order: ground quartet, excited quartet, shelving state. The pairwise
// degenerate m_s = +/-1/2 and +/-3/2 sublevels are kept as distinct labels so
// equiprobable shelf return is literal.
enum SpinLevel : int {
  kGm32 = 0, kGm12, kGp12, kGp32,
  kEm32, kEm12, kEp12, kEp32,
  kShelf,
  kNumLevels
};

extern const std::array<const char*, kNumLevels> kSpinLevelLabels;

/// Markov generator over the nine levels; columns sum to zero.
struct RateSystem {
  Eigen::Matrix<double, kNumLevels, kNumLevels> generator;
};

/// Assemble the generator at one laser detuning [Hz] from the scan center.
/// The A1 (m_s = +/-1/2) and A2 (m_s = +/-3/2) spin-preserving transitions
/// sit at -/+ (d_es_2 - d_gs_2)/2; optical pumping is bidirectional with a
/// unit-peak Lorentzian line factor of width opt_linewidth.
RateSystem build_rate_system(const SpinParams& p, double laser_detuning);

class steady_state_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonnegative stationary distribution of the generator. Unique when the
/// chain is irreducible; otherwise the long-time limit from a uniform
/// ground-state initial condition.
Eigen::Matrix<double, kNumLevels, 1> steady_state(const RateSystem& r);

/// Simulated PLE scan: steady-state excited population converted to a PSB
/// collection rate per detuning, then convolved with the Gaussian
/// spectral-diffusion kernel. Detunings must be sorted; a uniform grid is
/// required when diffusion_sigma > 0.
Spectrum ple_spectrum(const SpinParams& p, const std::vector<double>& detunings, bool mw_on);

struct PeakLinewidth {
  double center_hz = 0.0;
  double fwhm_hz = 0.0;
  double diffusion_hz = 0.0;
  bool diffusion_clamped = false;
};

struct LinewidthReport {
  LorentzianFit fit;  // two-peak fit of the scan
  double gamma_tl_hz = 0.0;
  std::vector<PeakLinewidth> peaks;
};

/// Two-peak fit of a PLE scan plus the transform-limit decomposition for the
/// excited-state lifetime tau [s].
LinewidthReport linewidth_report(const Spectrum& s, double tau);

}  // namespace nanopan
