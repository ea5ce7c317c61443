#pragma once

#include <Eigen/Dense>
#include <optional>

#include "robrec/distributions.hpp"

namespace robrec {

/// Truncation level used to robustify the empirical mean of q*U against heavy
/// tails. The effective level is tau_override when set, otherwise
/// scale_c * m^(1 / (2 (1 + kappa))). kappa encodes how many moments of q are
/// assumed finite (E|q|^(2(1+kappa)) < infinity).
struct TruncationConfig {
  double kappa = 1.0;
  double scale_c = 1.0;
  std::optional<double> tau_override;

  double effective_tau(int m) const;
};

/// Polar decomposition of the data: row i of u_tilde is sqrt(d) x_i / |x_i|
/// (norm sqrt(d)) and q_i = |x_i| y_i / sqrt(d), so that q_i u_tilde_i = y_i x_i.
struct TransformedData {
  Eigen::MatrixXd u_tilde;  // m x d
  Eigen::VectorXd q;        // m

  int m() const { return static_cast<int>(u_tilde.rows()); }
  int d() const { return static_cast<int>(u_tilde.cols()); }
};

struct RecoveryResult {
  Eigen::VectorXd theta;
  double lambda_used = 0.0;
  double tau_used = 0.0;
  int nnz = 0;
  int iterations = 0;  // 0 for closed forms
};

/// Nuclear-norm variant returns a matrix estimate with a rank diagnostic.
struct MatrixRecoveryResult {
  Eigen::MatrixXd theta;
  double lambda_used = 0.0;
  int rank = 0;
};

/// Throws std::invalid_argument naming the row index if some x_i is zero.
TransformedData transform(const Dataset& data);

/// Componentwise sign(q_i) * min(|q_i|, tau).
Eigen::VectorXd truncate(const Eigen::VectorXd& q, double tau);

/// The sufficient statistic b = (1/m) sum_i trunc(q_i) u_tilde_i feeding every
/// estimator below.
Eigen::VectorXd robust_direction(const TransformedData& data, const TruncationConfig& config);

/// Closed-form minimizer of |theta|^2 - 2<b, theta> + lambda |theta|_1:
/// coordinatewise shrinkage by lambda/2, ties at the threshold map to zero.
RecoveryResult soft_threshold_estimate(const Eigen::VectorXd& b, double lambda);

/// Euclidean projection onto the l1 ball of the given radius via the
/// sort-and-shift simplex scheme; interior points are returned unchanged.
Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& b, double radius);

/// Constrained estimator over Theta = {|theta|_1 <= radius}: the projection of
/// the robust direction, which minimizes the truncated loss over the ball.
RecoveryResult constrained_estimate(const TransformedData& data, const TruncationConfig& config,
                                    double radius);

/// Minimizer of |theta|_F^2 - 2<B, theta> + lambda |theta|_*: singular values
/// shrunk by lambda/2.
MatrixRecoveryResult nuclear_soft_threshold(const Eigen::MatrixXd& b, double lambda);

/// Accelerated proximal gradient for the non-isotropic objective
///   |S theta|^2 - 2 <S b, theta> + lambda |theta|_1,  S = sigma_half (SPD).
/// Stops when the sup-norm change between iterates drops below tol; a result
/// with iterations == max_iter signals non-convergence rather than an error.
RecoveryResult nonisotropic_estimate(const TransformedData& data, const TruncationConfig& config,
                                     const Eigen::MatrixXd& sigma_half, double lambda,
                                     double tol = 1e-8, int max_iter = 10000);

}  // namespace robrec
