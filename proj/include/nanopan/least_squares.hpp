#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace nanopan {

enum class LsqStatus { Converged, MaxIterations, SingularNormalEquations };

struct LsqOptions {
  int max_iterations = 200;
  double rel_cost_tol = 1e-10;  // stop when the relative cost change drops below this
  double lambda_init = 1e-3;
  double lambda_min = 1e-12;
  double lambda_max = 1e12;
  // Optional per-parameter magnitudes used for finite-difference steps when a
  // parameter passes through zero. Empty = derive from the initial guess.
  std::vector<double> param_scales;
};

struct LsqResult {
  Eigen::VectorXd params;
  Eigen::MatrixXd covariance;       // sigma^2 (J^T J)^-1 at the optimum
  double cost = 0.0;                // sum of squared residuals
  int iterations = 0;
  LsqStatus status = LsqStatus::Converged;
  double condition_estimate = 0.0;  // of the last normal equations
  std::vector<double> accepted_costs;  // cost after each accepted step
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Damped (Levenberg-Marquardt) least squares with a forward-difference
/// Jacobian. Damping is multiplicative on diag(J^T J): x10 on rejection,
/// x0.1 on acceptance, floored at lambda_min. Steps that raise the cost or
/// produce non-finite residuals are rejected, so the accepted cost sequence
/// is non-increasing.
LsqResult least_squares(const ResidualFn& residuals, Eigen::VectorXd params0,
                        const LsqOptions& opt = {});

}  // namespace nanopan
