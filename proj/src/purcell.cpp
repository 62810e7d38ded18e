#include "nanopan/purcell.hpp"

#include <cmath>
#include <stdexcept>

#include "nanopan/constants.hpp"

namespace nanopan {

void CavityParams::validate() const {
  if (!(q >= 1.0)) throw std::invalid_argument("CavityParams: q must be >= 1");
  if (!(v_mode > 0.0)) throw std::invalid_argument("CavityParams: v_mode must be > 0");
  if (!(lambda_cav > 0.0)) throw std::invalid_argument("CavityParams: lambda_cav must be > 0");
  if (!(n_eff > 0.0)) throw std::invalid_argument("CavityParams: n_eff must be > 0");
}

void EmitterParams::validate() const {
  if (!(lambda_zpl > 0.0)) throw std::invalid_argument("EmitterParams: lambda_zpl must be > 0");
  if (!(tau0 > 0.0)) throw std::invalid_argument("EmitterParams: tau0 must be > 0");
  if (!(debye_waller > 0.0 && debye_waller <= 1.0))
    throw std::invalid_argument("EmitterParams: debye_waller must be in (0,1]");
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::invalid_argument("EmitterParams: eta must be in (0,1]");
}

double max_purcell(const CavityParams& c) {
  c.validate();
  const double lam_n = c.lambda_cav / c.n_eff;
  return (3.0 / (4.0 * kPi * kPi)) * lam_n * lam_n * lam_n * c.q / c.v_mode;
}

double zpl_purcell(double f_max, double xi, double q, double lambda_zpl,
                   double lambda_cav) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("zpl_purcell: xi must be in [0,1]");
  if (!(lambda_cav > 0.0)) throw std::invalid_argument("zpl_purcell: lambda_cav must be > 0");
  const double delta = lambda_zpl / lambda_cav - 1.0;
  return xi * f_max / (1.0 + 4.0 * q * q * delta * delta);
}

double purcell_from_intensity(double i_on, double i_off) {
  if (!(i_on >= 0.0)) throw std::invalid_argument("purcell_from_intensity: i_on must be >= 0");
  if (!(i_off > 0.0)) throw std::domain_error("purcell_from_intensity: i_off must be > 0");
  return i_on / i_off - 1.0;
}

double purcell_from_lifetime(double tau0, double eta, double tau_on, double tau_off) {
  if (!(tau0 > 0.0 && tau_on > 0.0 && tau_off > 0.0))
    throw std::invalid_argument("purcell_from_lifetime: lifetimes must be > 0");
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::invalid_argument("purcell_from_lifetime: eta must be in (0,1]");
  return (tau0 / eta) * (1.0 / tau_on - 1.0 / tau_off);
}

namespace {

// Trapezoid integral of the piecewise-linear spectrum over [lo, hi], with
// interpolated partial trapezoids at the window edges.
double trapz_window(const Spectrum& s, double lo, double hi) {
  double acc = 0.0;
  const std::size_t n = s.x.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double x0 = s.x[i], x1 = s.x[i + 1];
    if (x1 <= lo || x0 >= hi) continue;
    const double a = std::max(x0, lo);
    const double b = std::min(x1, hi);
    const double t0 = (a - x0) / (x1 - x0);
    const double t1 = (b - x0) / (x1 - x0);
    const double ya = s.counts[i] * (1.0 - t0) + s.counts[i + 1] * t0;
    const double yb = s.counts[i] * (1.0 - t1) + s.counts[i + 1] * t1;
    acc += 0.5 * (ya + yb) * (b - a);
  }
  return acc;
}

}  // namespace

double branching_ratio(const Spectrum& s, double window_lo, double window_hi) {
  s.validate();
  if (!(window_lo < window_hi)) throw std::invalid_argument("branching_ratio: empty window");
  if (window_lo < s.x.front() || window_hi > s.x.back())
    throw std::invalid_argument("branching_ratio: window outside spectrum support");
  const double total = trapz_window(s, s.x.front(), s.x.back());
  if (!(total > 0.0)) throw std::domain_error("branching_ratio: zero total counts");
  return trapz_window(s, window_lo, window_hi) / total;
}

double transform_limit(double tau) {
  if (!(tau > 0.0)) throw std::domain_error("transform_limit: tau must be > 0");
  return 1.0 / (2.0 * kPi * tau);
}

SpectralDiffusion spectral_diffusion(double fwhm_hz, double gamma_tl_hz) {
  if (!(fwhm_hz >= 0.0)) throw std::invalid_argument("spectral_diffusion: fwhm must be >= 0");
  SpectralDiffusion out;
  if (fwhm_hz >= gamma_tl_hz) {
    out.value_hz = fwhm_hz - gamma_tl_hz;
  } else {
    out.value_hz = 0.0;
    out.clamped = true;
  }
  return out;
}

}  // namespace nanopan
