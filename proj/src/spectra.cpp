#include "nanopan/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nanopan {

namespace {

void check_xy(const std::vector<double>& x, const std::vector<double>& y,
              std::size_t min_len, const char* what) {
  if (x.size() != y.size())
    throw std::invalid_argument(std::string(what) + ": x/counts length mismatch");
  if (x.size() < min_len)
    throw std::invalid_argument(std::string(what) + ": too few samples");
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (!(x[i] < x[i + 1]))
      throw std::invalid_argument(std::string(what) + ": abscissa not strictly increasing");
  for (double v : y)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(what) + ": counts must be finite and >= 0");
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double idx = q * (static_cast<double>(v.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(idx);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double w = idx - static_cast<double>(lo);
  return v[lo] * (1.0 - w) + v[hi] * w;
}

std::vector<double> moving_average5(const std::vector<double>& y) {
  const int n = static_cast<int>(y.size());
  std::vector<double> out(y.size());
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    int cnt = 0;
    for (int k = i - 2; k <= i + 2; ++k) {
      if (k < 0 || k >= n) continue;
      acc += y[k];
      ++cnt;
    }
    out[i] = acc / cnt;
  }
  return out;
}

// Indices of the n largest local maxima of the smoothed counts.
std::vector<int> seed_peak_indices(const std::vector<double>& x,
                                   const std::vector<double>& smoothed, int n_peaks) {
  const int n = static_cast<int>(x.size());
  std::vector<std::pair<double, int>> maxima;
  for (int i = 1; i + 1 < n; ++i)
    if (smoothed[i] >= smoothed[i - 1] && smoothed[i] >= smoothed[i + 1])
      maxima.emplace_back(smoothed[i], i);
  std::sort(maxima.begin(), maxima.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<int> idx;
  for (const auto& [v, i] : maxima) {
    (void)v;
    bool close = false;
    for (int j : idx)
      if (std::abs(i - j) < 3) close = true;
    if (!close) idx.push_back(i);
    if (static_cast<int>(idx.size()) == n_peaks) break;
  }
  // Fall back to the global maximum (and a shifted copy) if the data has
  // fewer distinct local maxima than requested peaks.
  while (static_cast<int>(idx.size()) < n_peaks) {
    int imax = static_cast<int>(std::max_element(smoothed.begin(), smoothed.end()) -
                                smoothed.begin());
    int cand = idx.empty() ? imax : std::clamp(idx.back() + n / 4 + 1, 1, n - 2);
    idx.push_back(cand);
  }
  return idx;
}

double lorentz(double x, double c, double w, double a) {
  const double hw = 0.5 * std::abs(w);
  const double d = x - c;
  return a * hw * hw / (d * d + hw * hw);
}

}  // namespace

void Spectrum::validate(std::size_t min_len) const { check_xy(x, counts, min_len, "Spectrum"); }
void TimeTrace::validate(std::size_t min_len) const { check_xy(t, counts, min_len, "TimeTrace"); }

LorentzianFit fit_lorentzian(const Spectrum& s, int n_peaks,
                             const std::optional<std::vector<double>>& init) {
  if (n_peaks != 1 && n_peaks != 2)
    throw std::invalid_argument("fit_lorentzian: n_peaks must be 1 or 2");
  s.validate(8);
  const int n = static_cast<int>(s.x.size());
  const int np = 1 + 3 * n_peaks;

  Eigen::VectorXd p0(np);
  if (init) {
    if (static_cast<int>(init->size()) != np)
      throw std::invalid_argument("fit_lorentzian: init must have 1 + 3*n_peaks entries");
    for (int k = 0; k < np; ++k) p0[k] = (*init)[k];
  } else {
    const double baseline = percentile(s.counts, 0.05);
    const double q1 = s.x[n / 4];
    const double q3 = s.x[(3 * n) / 4];
    const double fwhm0 = 0.5 * (q3 - q1);
    auto smoothed = moving_average5(s.counts);
    auto idx = seed_peak_indices(s.x, smoothed, n_peaks);
    std::sort(idx.begin(), idx.end());
    p0[0] = baseline;
    for (int k = 0; k < n_peaks; ++k) {
      p0[1 + 3 * k] = s.x[idx[k]];
      p0[2 + 3 * k] = fwhm0;
      p0[3 + 3 * k] = std::max(s.counts[idx[k]] - baseline, 1e-3 * (smoothed[idx[k]] + 1.0));
    }
  }

  Eigen::Map<const Eigen::VectorXd> xv(s.x.data(), n);
  Eigen::Map<const Eigen::VectorXd> yv(s.counts.data(), n);
  auto model_residuals = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) {
      double v = p[0];
      for (int k = 0; k < n_peaks; ++k)
        v += lorentz(xv[i], p[1 + 3 * k], p[2 + 3 * k], p[3 + 3 * k]);
      r[i] = v - yv[i];
    }
    return r;
  };

  LsqOptions opt;
  const double span = s.x.back() - s.x.front();
  const double ymax = *std::max_element(s.counts.begin(), s.counts.end());
  opt.param_scales.assign(np, 1.0);
  opt.param_scales[0] = std::max(ymax, 1.0);
  for (int k = 0; k < n_peaks; ++k) {
    opt.param_scales[1 + 3 * k] = span;
    opt.param_scales[2 + 3 * k] = span;
    opt.param_scales[3 + 3 * k] = std::max(ymax, 1.0);
  }

  LsqResult res = least_squares(model_residuals, p0, opt);
  if (res.status == LsqStatus::SingularNormalEquations)
    throw fit_error("fit_lorentzian: singular normal equations (condition ~ " +
                    std::to_string(res.condition_estimate) + ")");
  if (res.status == LsqStatus::MaxIterations)
    throw fit_error("fit_lorentzian: no convergence in 200 iterations");

  LorentzianFit fit;
  fit.baseline = res.params[0];
  fit.baseline_stderr = std::sqrt(std::max(res.covariance(0, 0), 0.0));
  std::vector<int> order(n_peaks);
  for (int k = 0; k < n_peaks; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return res.params[1 + 3 * a] < res.params[1 + 3 * b];
  });
  for (int k : order) {
    LorentzPeak pk;
    pk.center = res.params[1 + 3 * k];
    pk.fwhm = std::abs(res.params[2 + 3 * k]);
    pk.amplitude = res.params[3 + 3 * k];
    pk.center_stderr = std::sqrt(std::max(res.covariance(1 + 3 * k, 1 + 3 * k), 0.0));
    pk.fwhm_stderr = std::sqrt(std::max(res.covariance(2 + 3 * k, 2 + 3 * k), 0.0));
    pk.amplitude_stderr = std::sqrt(std::max(res.covariance(3 + 3 * k, 3 + 3 * k), 0.0));
    fit.peaks.push_back(pk);
  }
  fit.residual_norm = std::sqrt(res.cost);
  fit.iterations = res.iterations;
  fit.covariance = res.covariance;

  if (n_peaks == 2) {
    const double sep = std::abs(fit.peaks[1].center - fit.peaks[0].center);
    double min_dx = span;
    for (int i = 0; i + 1 < n; ++i) min_dx = std::min(min_dx, s.x[i + 1] - s.x[i]);
    fit.degenerate_peaks = sep < min_dx;
  }
  return fit;
}

double q_from_fit(double center, double fwhm) {
  if (!(fwhm > 0.0)) throw std::domain_error("q_from_fit: fwhm must be > 0");
  return center / fwhm;
}

ExpDecayFit fit_exp_decay(const TimeTrace& trace,
                          const std::optional<std::vector<double>>& init) {
  trace.validate(8);
  const int n = static_cast<int>(trace.t.size());

  Eigen::VectorXd p0(3);  // [baseline, amplitude, tau]
  if (init) {
    if (init->size() != 3)
      throw std::invalid_argument("fit_exp_decay: init must be {baseline, amplitude, tau}");
    p0 << (*init)[0], (*init)[1], (*init)[2];
  } else {
    const double baseline = percentile(trace.counts, 0.05);
    const double peak = *std::max_element(trace.counts.begin(), trace.counts.end());
    const double amp = peak - baseline;
    if (!(amp > 0.0)) throw fit_error("fit_exp_decay: trace has no decay above baseline");
    const int ipeak = static_cast<int>(
        std::max_element(trace.counts.begin(), trace.counts.end()) - trace.counts.begin());
    // First crossing of baseline + amp/e after the peak seeds tau.
    double tau0 = (trace.t.back() - trace.t[ipeak]) / 3.0;
    const double target = baseline + amp / std::exp(1.0);
    for (int i = ipeak; i < n; ++i) {
      if (trace.counts[i] <= target) {
        tau0 = std::max(trace.t[i] - trace.t[ipeak], trace.t[1] - trace.t[0]);
        break;
      }
    }
    p0 << baseline, amp, tau0;
  }
  if (!(p0[2] > 0.0)) throw fit_error("fit_exp_decay: tau seed must be > 0");

  Eigen::Map<const Eigen::VectorXd> tv(trace.t.data(), n);
  Eigen::Map<const Eigen::VectorXd> yv(trace.counts.data(), n);
  auto model_residuals = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(n);
    if (!(p[2] > 0.0)) {
      // Out-of-domain tau: report an unusable trial so the step is rejected.
      r.setConstant(std::numeric_limits<double>::infinity());
      return r;
    }
    for (int i = 0; i < n; ++i) r[i] = p[0] + p[1] * std::exp(-tv[i] / p[2]) - yv[i];
    return r;
  };

  LsqOptions opt;
  opt.param_scales = {std::max(p0[1], 1.0), std::max(p0[1], 1.0), p0[2]};
  LsqResult res = least_squares(model_residuals, p0, opt);
  if (res.status == LsqStatus::SingularNormalEquations)
    throw fit_error("fit_exp_decay: singular normal equations");
  if (res.status == LsqStatus::MaxIterations)
    throw fit_error("fit_exp_decay: no convergence in 200 iterations");
  if (!(res.params[2] > 0.0)) throw fit_error("fit_exp_decay: tau collapsed to bound");

  // A tau comparable to or longer than ~30x the window means the model
  // degenerated into a constant; report it as no-decay.
  const double window = trace.t.back() - trace.t.front();
  if (res.params[2] > 30.0 * window || !(res.params[1] > 0.0))
    throw fit_error("fit_exp_decay: no resolvable decay in the trace window");

  ExpDecayFit fit;
  fit.baseline = res.params[0];
  fit.amplitude = res.params[1];
  fit.tau = res.params[2];
  fit.stderr_tau = std::sqrt(std::max(res.covariance(2, 2), 0.0));
  fit.residual_norm = std::sqrt(res.cost);
  fit.iterations = res.iterations;
  return fit;
}

}  // namespace nanopan
