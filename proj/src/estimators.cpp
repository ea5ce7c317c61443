#include "robrec/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace robrec {

namespace {

double soft(double v, double shrink) {
  if (v > shrink) return v - shrink;
  if (v < -shrink) return v + shrink;
  return 0.0;
}

int count_nonzeros(const Eigen::VectorXd& v) {
  int n = 0;
  for (int k = 0; k < v.size(); ++k) {
    if (v[k] != 0.0) ++n;
  }
  return n;
}

}  // namespace

double TruncationConfig::effective_tau(int m) const {
  if (tau_override) {
    if (!(*tau_override > 0.0)) {
      throw std::invalid_argument("TruncationConfig: tau_override must be positive");
    }
    return *tau_override;
  }
  if (!(kappa > 0.0 && kappa <= 1.0)) {
    throw std::invalid_argument("TruncationConfig: kappa must lie in (0, 1]");
  }
  if (!(scale_c > 0.0)) {
    throw std::invalid_argument("TruncationConfig: scale_c must be positive");
  }
  if (m < 1) {
    throw std::invalid_argument("TruncationConfig: sample count must be positive");
  }
  return scale_c * std::pow(static_cast<double>(m), 1.0 / (2.0 * (1.0 + kappa)));
}

TransformedData transform(const Dataset& data) {
  const int m = data.m();
  const int d = data.d();
  if (m < 1 || d < 1) {
    throw std::invalid_argument("transform: dataset is empty");
  }
  if (data.y.size() != m) {
    throw std::invalid_argument("transform: response length does not match design rows");
  }
  const double root_d = std::sqrt(static_cast<double>(d));
  TransformedData out;
  out.u_tilde.resize(m, d);
  out.q.resize(m);
  for (int i = 0; i < m; ++i) {
    const double norm = data.x.row(i).norm();
    if (norm == 0.0) {
      throw std::invalid_argument("transform: measurement row " + std::to_string(i) +
                                  " is zero; cannot normalize");
    }
    out.u_tilde.row(i) = data.x.row(i) * (root_d / norm);
    out.q[i] = norm * data.y[i] / root_d;
  }
  return out;
}

Eigen::VectorXd truncate(const Eigen::VectorXd& q, double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("truncate: tau must be positive");
  }
  return q.unaryExpr([tau](double v) {
    const double a = std::min(std::abs(v), tau);
    return v < 0.0 ? -a : (v > 0.0 ? a : 0.0);
  });
}

Eigen::VectorXd robust_direction(const TransformedData& data, const TruncationConfig& config) {
  const int m = data.m();
  const Eigen::VectorXd q_trunc = truncate(data.q, config.effective_tau(m));
  return data.u_tilde.transpose() * q_trunc / static_cast<double>(m);
}

RecoveryResult soft_threshold_estimate(const Eigen::VectorXd& b, double lambda) {
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("soft_threshold_estimate: lambda must be nonnegative");
  }
  RecoveryResult result;
  const double shrink = lambda / 2.0;
  result.theta = b.unaryExpr([shrink](double v) { return soft(v, shrink); });
  result.lambda_used = lambda;
  result.nnz = count_nonzeros(result.theta);
  return result;
}

Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& b, double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("project_l1_ball: radius must be positive");
  }
  if (b.lpNorm<1>() <= radius) return b;

  // Duchi et al. sort-and-shift: project |b| onto the simplex of size radius,
  // then restore signs.
  Eigen::VectorXd mag = b.cwiseAbs();
  std::vector<double> sorted(mag.data(), mag.data() + mag.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - radius) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) {
      shift = candidate;
    } else {
      break;
    }
  }
  Eigen::VectorXd out(b.size());
  for (int k = 0; k < b.size(); ++k) {
    const double a = std::max(mag[k] - shift, 0.0);
    out[k] = b[k] < 0.0 ? -a : a;
  }
  return out;
}

RecoveryResult constrained_estimate(const TransformedData& data, const TruncationConfig& config,
                                    double radius) {
  const Eigen::VectorXd b = robust_direction(data, config);
  RecoveryResult result;
  result.theta = project_l1_ball(b, radius);
  result.tau_used = config.effective_tau(data.m());
  result.nnz = count_nonzeros(result.theta);
  return result;
}

MatrixRecoveryResult nuclear_soft_threshold(const Eigen::MatrixXd& b, double lambda) {
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("nuclear_soft_threshold: lambda must be nonnegative");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd sigma = svd.singularValues();
  MatrixRecoveryResult result;
  result.lambda_used = lambda;
  const double shrink = lambda / 2.0;
  for (int k = 0; k < sigma.size(); ++k) {
    sigma[k] = std::max(sigma[k] - shrink, 0.0);
    if (sigma[k] > 0.0) ++result.rank;
  }
  result.theta = svd.matrixU() * sigma.asDiagonal() * svd.matrixV().transpose();
  return result;
}

RecoveryResult nonisotropic_estimate(const TransformedData& data, const TruncationConfig& config,
                                     const Eigen::MatrixXd& sigma_half, double lambda, double tol,
                                     int max_iter) {
  const int d = data.d();
  if (sigma_half.rows() != d || sigma_half.cols() != d) {
    throw std::invalid_argument("nonisotropic_estimate: sigma_half has wrong dimensions");
  }
  if (!sigma_half.isApprox(sigma_half.transpose(), 1e-10)) {
    throw std::invalid_argument("nonisotropic_estimate: sigma_half must be symmetric");
  }
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("nonisotropic_estimate: lambda must be nonnegative");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma_half);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("nonisotropic_estimate: sigma_half must be positive definite");
  }
  const double top = eig.eigenvalues().maxCoeff();

  const Eigen::MatrixXd sigma = sigma_half * sigma_half;
  const Eigen::VectorXd b = robust_direction(data, config);
  const Eigen::VectorXd c = sigma_half * b;

  // FISTA on g(theta) = theta^T Sigma theta - 2 <c, theta>, h = lambda |.|_1.
  // grad g is 2 Sigma theta - 2 c with Lipschitz constant 2 lambda_max(Sigma),
  // so the step is 1 / (2 lambda_max(Sigma)).
  const double step = 1.0 / (2.0 * top * top);
  const double shrink = step * lambda;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd y = x;
  double t = 1.0;
  RecoveryResult result;
  result.lambda_used = lambda;
  result.tau_used = config.effective_tau(data.m());
  result.iterations = max_iter;
  for (int iter = 1; iter <= max_iter; ++iter) {
    const Eigen::VectorXd grad = 2.0 * (sigma * y - c);
    Eigen::VectorXd x_next =
        (y - step * grad).unaryExpr([shrink](double v) { return soft(v, shrink); });
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double change = (x_next - x).lpNorm<Eigen::Infinity>();
    y = x_next + ((t - 1.0) / t_next) * (x_next - x);
    x = std::move(x_next);
    t = t_next;
    if (change < tol) {
      result.iterations = iter;
      break;
    }
  }
  result.theta = x;
  result.nnz = count_nonzeros(result.theta);
  return result;
}

}  // namespace robrec
