#include "robrec/lasso.hpp"

#include <cmath>
#include <stdexcept>

namespace robrec {

namespace {
double soft(double v, double shrink) {
  if (v > shrink) return v - shrink;
  if (v < -shrink) return v + shrink;
  return 0.0;
}
}  // namespace

RecoveryResult lasso_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                         const LassoConfig& config, const Eigen::VectorXd* warm_start,
                         std::vector<double>* objective_trace) {
  const int m = static_cast<int>(x.rows());
  const int d = static_cast<int>(x.cols());
  if (y.size() != m) {
    throw std::invalid_argument("lasso_fit: response length does not match design rows");
  }
  if (!(config.lambda >= 0.0)) {
    throw std::invalid_argument("lasso_fit: lambda must be nonnegative");
  }
  if (!(config.tol > 0.0) || config.max_iter < 1) {
    throw std::invalid_argument("lasso_fit: invalid tolerance or iteration limit");
  }
  if (warm_start && warm_start->size() != d) {
    throw std::invalid_argument("lasso_fit: warm start has wrong dimension");
  }

  const Eigen::VectorXd col_sq = x.colwise().squaredNorm();
  Eigen::VectorXd theta = warm_start ? *warm_start : Eigen::VectorXd::Zero(d);
  Eigen::VectorXd residual = y - x * theta;

  RecoveryResult result;
  result.lambda_used = config.lambda;
  result.iterations = config.max_iter;
  const double shrink = config.lambda / 2.0;
  for (int sweep = 1; sweep <= config.max_iter; ++sweep) {
    double max_change = 0.0;
    for (int k = 0; k < d; ++k) {
      if (col_sq[k] == 0.0) continue;
      const double old = theta[k];
      const double z = x.col(k).dot(residual) + col_sq[k] * old;
      const double updated = soft(z, shrink) / col_sq[k];
      if (updated != old) {
        residual -= (updated - old) * x.col(k);
        theta[k] = updated;
        max_change = std::max(max_change, std::abs(updated - old));
      }
    }
    if (objective_trace) {
      objective_trace->push_back(residual.squaredNorm() + config.lambda * theta.lpNorm<1>());
    }
    if (max_change < config.tol) {
      result.iterations = sweep;
      break;
    }
  }
  result.theta = std::move(theta);
  for (int k = 0; k < d; ++k) {
    if (result.theta[k] != 0.0) ++result.nnz;
  }
  return result;
}

}  // namespace robrec
