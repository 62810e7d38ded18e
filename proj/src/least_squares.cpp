#include "nanopan/least_squares.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nanopan {

namespace {

bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

Eigen::MatrixXd forward_jacobian(const ResidualFn& f, const Eigen::VectorXd& p,
                                 const Eigen::VectorXd& r0,
                                 const std::vector<double>& scales) {
  const int n = static_cast<int>(r0.size());
  const int np = static_cast<int>(p.size());
  Eigen::MatrixXd jac(n, np);
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  for (int k = 0; k < np; ++k) {
    const double step = sqrt_eps * std::max(std::abs(p[k]), scales[k]);
    Eigen::VectorXd pk = p;
    pk[k] += step;
    Eigen::VectorXd rk = f(pk);
    if (rk.size() != n) throw std::invalid_argument("least_squares: residual size changed");
    jac.col(k) = (rk - r0) / step;
  }
  return jac;
}

}  // namespace

LsqResult least_squares(const ResidualFn& residuals, Eigen::VectorXd params,
                        const LsqOptions& opt) {
  if (!finite(params)) throw std::invalid_argument("least_squares: non-finite initial params");
  const int np = static_cast<int>(params.size());

  std::vector<double> scales = opt.param_scales;
  if (scales.empty()) {
    scales.resize(np);
    for (int k = 0; k < np; ++k) scales[k] = std::max(std::abs(params[k]), 1e-8);
  } else if (static_cast<int>(scales.size()) != np) {
    throw std::invalid_argument("least_squares: param_scales size mismatch");
  }

  LsqResult out;
  Eigen::VectorXd r = residuals(params);
  if (!finite(r)) throw std::invalid_argument("least_squares: non-finite residuals at start");
  double cost = r.squaredNorm();
  out.accepted_costs.push_back(cost);

  double lambda = opt.lambda_init;
  int it = 0;
  bool converged = (cost == 0.0);

  Eigen::MatrixXd jac;
  bool jac_fresh = false;

  while (!converged && it < opt.max_iterations) {
    ++it;
    if (!jac_fresh) {
      jac = forward_jacobian(residuals, params, r, scales);
      jac_fresh = true;
    }
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::VectorXd jtr = jac.transpose() * r;

    // Marquardt scaling keeps the step meaningful across wildly different
    // parameter magnitudes (meter-scale centers vs count-scale amplitudes).
    Eigen::VectorXd diag = jtj.diagonal();
    for (int k = 0; k < np; ++k)
      if (!(diag[k] > 0.0)) diag[k] = 1.0;

    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd a = jtj;
      a.diagonal() += lambda * diag;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
      Eigen::VectorXd step;
      bool solvable = (ldlt.info() == Eigen::Success);
      if (solvable) {
        step = ldlt.solve(-jtr);
        solvable = finite(step);
      }
      if (!solvable) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(np - 1);
        out.condition_estimate = (smin > 0.0) ? smax / smin
                                              : std::numeric_limits<double>::infinity();
        out.params = params;
        out.cost = cost;
        out.iterations = it;
        out.status = LsqStatus::SingularNormalEquations;
        return out;
      }

      Eigen::VectorXd trial = params + step;
      Eigen::VectorXd rt = residuals(trial);
      const double trial_cost = finite(rt) ? rt.squaredNorm()
                                           : std::numeric_limits<double>::infinity();
      if (trial_cost <= cost) {
        const double rel_drop = (cost > 0.0) ? (cost - trial_cost) / cost : 0.0;
        params = trial;
        r = rt;
        cost = trial_cost;
        out.accepted_costs.push_back(cost);
        lambda = std::max(lambda * 0.1, opt.lambda_min);
        jac_fresh = false;
        accepted = true;
        if (rel_drop < opt.rel_cost_tol || cost == 0.0) converged = true;
      } else {
        lambda *= 10.0;
        if (lambda > opt.lambda_max) {
          // Damping exhausted: no downhill step exists at this scale.
          converged = true;
          accepted = true;
        }
      }
    }
  }

  out.params = params;
  out.cost = cost;
  out.iterations = it;
  out.status = converged ? LsqStatus::Converged : LsqStatus::MaxIterations;

  // Linearized covariance at the optimum.
  if (!jac_fresh) jac = forward_jacobian(residuals, params, r, scales);
  const int n = static_cast<int>(r.size());
  Eigen::MatrixXd jtj = jac.transpose() * jac;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jtj, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(np - 1);
  out.condition_estimate = (smin > 0.0) ? smax / smin
                                        : std::numeric_limits<double>::infinity();
  const double dof = std::max(1, n - np);
  const double sigma2 = cost / dof;
  Eigen::MatrixXd inv = svd.solve(Eigen::MatrixXd::Identity(np, np));
  out.covariance = sigma2 * inv;
  return out;
}

}  // namespace nanopan
