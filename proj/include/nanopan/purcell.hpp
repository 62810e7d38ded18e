#pragma once

#include "nanopan/spectra.hpp"

namespace nanopan {

/// Cavity figures entering the maximum Purcell enhancement.
struct CavityParams {
  double q = 1.0;           // quality factor, >= 1
  double v_mode = 0.0;      // mode volume [m^3], > 0
  double lambda_cav = 0.0;  // resonance wavelength [m], > 0
  double n_eff = 1.0;       // effective index, > 0

  void validate() const;
};

/// Emitter photophysics used by the lifetime estimator.
struct EmitterParams {
  double lambda_zpl = 0.0;   // [m], > 0
  double tau0 = 0.0;         // natural lifetime [s], > 0
  double debye_waller = 1.0; // ZPL fraction of an uncoupled emitter, (0,1]
  double eta = 1.0;          // off-resonance ZPL branching ratio, (0,1]

  void validate() const;
};

/// F_max = (3 / 4 pi^2) (lambda_cav / n_eff)^3 Q / V_mode.
double max_purcell(const CavityParams& c);

/// F_ZPL = xi F_max / (1 + 4 Q^2 (lambda_zpl/lambda_cav - 1)^2).
double zpl_purcell(double f_max, double xi, double q, double lambda_zpl,
                   double lambda_cav);

/// F = I_on / I_off - 1.
double purcell_from_intensity(double i_on, double i_off);

/// F = (tau0 / eta) (1/tau_on - 1/tau_off). Negative values (tau_on >
/// tau_off) are reported, not clamped.
double purcell_from_lifetime(double tau0, double eta, double tau_on, double tau_off);

/// Trapezoidal counts integral over [window_lo, window_hi] divided by the
/// integral over the whole spectrum.
double branching_ratio(const Spectrum& s, double window_lo, double window_hi);

/// Transform-limited linewidth 1/(2 pi tau) [Hz].
double transform_limit(double tau);

struct SpectralDiffusion {
  double value_hz = 0.0;
  bool clamped = false;  // set when fwhm < gamma_tl forced the result to 0
};

/// Excess linewidth max(fwhm - gamma_tl, 0) attributed to spectral diffusion.
SpectralDiffusion spectral_diffusion(double fwhm_hz, double gamma_tl_hz);

}  // namespace nanopan
