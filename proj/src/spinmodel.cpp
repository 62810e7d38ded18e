#include "nanopan/spinmodel.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "nanopan/constants.hpp"

namespace nanopan {

const std::array<const char*, kNumLevels> kSpinLevelLabels = {
    "g-3/2", "g-1/2", "g+1/2", "g+3/2",
    "e-3/2", "e-1/2", "e+1/2", "e+3/2",
    "shelf"};

void SpinParams::validate() const {
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0)) throw std::invalid_argument(std::string("SpinParams: ") + name + " must be >= 0");
  };
  nonneg(d_gs_2, "d_gs_2");
  nonneg(d_es_2, "d_es_2");
  nonneg(gamma_rad, "gamma_rad");
  nonneg(isc_rate, "isc_rate");
  nonneg(shelf_decay, "shelf_decay");
  nonneg(mw_rate, "mw_rate");
  nonneg(opt_linewidth, "opt_linewidth");
  nonneg(diffusion_sigma, "diffusion_sigma");
  nonneg(pump_rate_peak, "pump_rate_peak");
  if (!(d_es_2 > d_gs_2))
    throw std::invalid_argument("SpinParams: d_es_2 must exceed d_gs_2");
}

namespace {

double unit_lorentzian(double x, double fwhm) {
  if (fwhm <= 0.0) return x == 0.0 ? 1.0 : 0.0;
  const double hw = 0.5 * fwhm;
  return hw * hw / (x * x + hw * hw);
}

void add_rate(Eigen::Matrix<double, kNumLevels, kNumLevels>& g, int from, int to,
              double rate) {
  g(to, from) += rate;
  g(from, from) -= rate;
}

}  // namespace

RateSystem build_rate_system(const SpinParams& p, double laser_detuning) {
  p.validate();
  RateSystem sys;
  auto& g = sys.generator;
  g.setZero();

  const double sep = p.d_es_2 - p.d_gs_2;
  const double delta_a1 = -0.5 * sep;
  const double delta_a2 = +0.5 * sep;
  const double w1 = p.pump_rate_peak * unit_lorentzian(laser_detuning - delta_a1, p.opt_linewidth);
  const double w2 = p.pump_rate_peak * unit_lorentzian(laser_detuning - delta_a2, p.opt_linewidth);

  // Spin-preserving optical pumping, bidirectional.
  add_rate(g, kGm12, kEm12, w1);
  add_rate(g, kEm12, kGm12, w1);
  add_rate(g, kGp12, kEp12, w1);
  add_rate(g, kEp12, kGp12, w1);
  add_rate(g, kGm32, kEm32, w2);
  add_rate(g, kEm32, kGm32, w2);
  add_rate(g, kGp32, kEp32, w2);
  add_rate(g, kEp32, kGp32, w2);

  // Spin-preserving radiative decay.
  add_rate(g, kEm32, kGm32, p.gamma_rad);
  add_rate(g, kEm12, kGm12, p.gamma_rad);
  add_rate(g, kEp12, kGp12, p.gamma_rad);
  add_rate(g, kEp32, kGp32, p.gamma_rad);

  // Intersystem crossing into the shelf, return to all four ground levels
  // with equal probability.
  for (int e : {kEm32, kEm12, kEp12, kEp32}) add_rate(g, e, kShelf, p.isc_rate);
  for (int gr : {kGm32, kGm12, kGp12, kGp32}) add_rate(g, kShelf, gr, 0.25 * p.shelf_decay);

  // MW mixing of the ground manifolds (delta m_s = +/-1 pairs).
  if (p.mw_rate > 0.0) {
    add_rate(g, kGm12, kGm32, p.mw_rate);
    add_rate(g, kGm32, kGm12, p.mw_rate);
    add_rate(g, kGp12, kGp32, p.mw_rate);
    add_rate(g, kGp32, kGp12, p.mw_rate);
  }
  return sys;
}

Eigen::Matrix<double, kNumLevels, 1> steady_state(const RateSystem& r) {
  using Vec = Eigen::Matrix<double, kNumLevels, 1>;
  using Mat = Eigen::Matrix<double, kNumLevels, kNumLevels>;
  const Mat& g = r.generator;

  const double colsum = g.colwise().sum().cwiseAbs().maxCoeff();
  const double scale = g.cwiseAbs().maxCoeff();
  if (scale > 0.0 && colsum > 1e-9 * scale)
    throw steady_state_error("steady_state: generator columns do not sum to zero");

  Vec uniform_ground = Vec::Zero();
  for (int i : {kGm32, kGm12, kGp12, kGp32}) uniform_ground[i] = 0.25;
  if (scale == 0.0) return uniform_ground;

  Eigen::FullPivLU<Mat> lu(g / scale);
  lu.setThreshold(1e-10);
  const int null_dim = kNumLevels - static_cast<int>(lu.rank());
  if (null_dim == 1) {
    Vec v = lu.kernel().col(0).real();
    if (v.sum() < 0.0) v = -v;
    const double total = v.sum();
    if (total > 0.0 && v.minCoeff() >= -1e-9 * v.maxCoeff()) {
      v = v.cwiseMax(0.0);
      return v / v.sum();
    }
  }

  // Reducible (or numerically marginal) chain: take the long-time limit from
  // the uniform ground-state initial condition by squaring exp(G dt).
  const double dt = 0.1 / scale;
  Mat p = (g * dt).exp();
  Vec v = uniform_ground;
  for (int iter = 0; iter < 64; ++iter) {
    Vec next = p * v;
    p = p * p;  // doubles the horizon each pass
    const double change = (next - v).cwiseAbs().maxCoeff();
    v = next;
    if (change < 1e-14) break;
  }
  v = v.cwiseMax(0.0);
  const double total = v.sum();
  if (!(total > 0.0) || !v.allFinite())
    throw steady_state_error("steady_state: no nonnegative stationary vector found");
  return v / total;
}

Spectrum ple_spectrum(const SpinParams& p, const std::vector<double>& detunings, bool mw_on) {
  p.validate();
  if (detunings.size() < 2) throw std::invalid_argument("ple_spectrum: need >= 2 detunings");
  for (std::size_t i = 0; i + 1 < detunings.size(); ++i)
    if (!(detunings[i] < detunings[i + 1]))
      throw std::invalid_argument("ple_spectrum: detunings must be sorted increasing");

  SpinParams eff = p;
  if (!mw_on) eff.mw_rate = 0.0;

  std::vector<double> signal(detunings.size());
  for (std::size_t i = 0; i < detunings.size(); ++i) {
    const RateSystem sys = build_rate_system(eff, detunings[i]);
    const auto pop = steady_state(sys);
    signal[i] = p.gamma_rad * (pop[kEm32] + pop[kEm12] + pop[kEp12] + pop[kEp32]);
  }

  if (p.diffusion_sigma > 0.0) {
    const std::size_t n = detunings.size();
    const double step = detunings[1] - detunings[0];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double d = detunings[i + 1] - detunings[i];
      if (std::abs(d - step) > 1e-6 * step)
        throw std::invalid_argument("ple_spectrum: diffusion convolution needs a uniform grid");
    }
    // Truncated, renormalized Gaussian kernel: discrete sum (and hence the
    // integrated signal away from the edges) is preserved exactly.
    const int half = std::max(1, static_cast<int>(std::ceil(6.0 * p.diffusion_sigma / step)));
    std::vector<double> kernel(2 * half + 1);
    double ksum = 0.0;
    for (int k = -half; k <= half; ++k) {
      const double u = k * step / p.diffusion_sigma;
      kernel[k + half] = std::exp(-0.5 * u * u);
      ksum += kernel[k + half];
    }
    for (double& k : kernel) k /= ksum;
    std::vector<double> blurred(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int k = -half; k <= half; ++k) {
        int j = static_cast<int>(i) + k;
        if (j < 0 || j >= static_cast<int>(n)) continue;
        acc += kernel[k + half] * signal[j];
      }
      blurred[i] = acc;
    }
    signal.swap(blurred);
  }

  Spectrum out;
  out.x = detunings;
  out.counts = std::move(signal);
  out.x_kind = XKind::FrequencyDetuning;
  return out;
}

LinewidthReport linewidth_report(const Spectrum& s, double tau) {
  LinewidthReport rep;
  rep.fit = fit_lorentzian(s, 2);
  rep.gamma_tl_hz = transform_limit(tau);
  for (const auto& peak : rep.fit.peaks) {
    PeakLinewidth pl;
    pl.center_hz = peak.center;
    pl.fwhm_hz = peak.fwhm;
    const auto sd = spectral_diffusion(peak.fwhm, rep.gamma_tl_hz);
    pl.diffusion_hz = sd.value_hz;
    pl.diffusion_clamped = sd.clamped;
    rep.peaks.push_back(pl);
  }
  return rep;
}

}  // namespace nanopan
