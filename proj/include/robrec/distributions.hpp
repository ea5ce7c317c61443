#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "robrec/rng.hpp"

namespace robrec {

/// Law of the scalar radius mu in the elliptical decomposition x = mu * B * U.
/// Every variant has unit variance: GaussianRadius designs are sampled
/// coordinate-wise instead of via an explicit radius, ParetoDifference is the
/// normalized difference of two Pareto variables, UnitConstant is the
/// constant 1 (pure sphere draws).
enum class RadialKind { GaussianRadius, ParetoDifference, UnitConstant };

struct RadialLaw {
  RadialKind kind = RadialKind::GaussianRadius;
  double pareto_q = 0.0;  // tail exponent, ParetoDifference only

  static RadialLaw gaussian() { return {RadialKind::GaussianRadius, 0.0}; }
  static RadialLaw unit_constant() { return {RadialKind::UnitConstant, 0.0}; }
  static RadialLaw pareto_difference(double q);  // requires q > 2
};

/// Variance of a Pareto(q) variable with density q / (1+t)^{1+q} on t > 0.
double pareto_variance(double q);

/// Inverse CDF of the same Pareto density: t = (1-u)^{-1/q} - 1.
double pareto_quantile(double q, double u);

/// Measurement distribution: dimension, radial law, optional shape factor
/// Sigma^{1/2} (absent = isotropic).
struct EllipticalDesign {
  int dim = 0;
  RadialLaw radial;
  std::optional<Eigen::MatrixXd> shape;  // symmetric positive definite
};

/// s-sparse signal: `values` is dense with exactly |support| nonzeros.
struct SparseSignal {
  Eigen::VectorXd values;
  std::vector<int> support;  // sorted, distinct, in [0, dim)

  int dim() const { return static_cast<int>(values.size()); }
};

/// m measurement vectors (rows of x) and the m responses.
struct Dataset {
  Eigen::MatrixXd x;  // m x d
  Eigen::VectorXd y;  // m

  int m() const { return static_cast<int>(x.rows()); }
  int d() const { return static_cast<int>(x.cols()); }
};

/// Uniform draw from the unit sphere S^{d-1}: d i.i.d. normals, normalized.
Eigen::VectorXd sample_uniform_sphere(int d, RandomStream& rng);

/// One radius draw. ParetoDifference returns (xi1 - xi2)/sqrt(2 c(q));
/// GaussianRadius returns a standard normal (designs of that kind bypass the
/// radius-times-sphere decomposition, see sample_design).
double sample_radial(const RadialLaw& law, RandomStream& rng);

/// m x d matrix of i.i.d. design rows. Sphere-based rows are mu * sqrt(d) * u;
/// GaussianRadius rows are i.i.d. standard normal. A shape factor, when
/// present, multiplies each row on the right.
Eigen::MatrixXd sample_design(const EllipticalDesign& design, int m, RandomStream& rng);

/// Support uniform without replacement, nonzero values i.i.d. Uniform[0,1].
SparseSignal sample_sparse_signal(int d, int s, RandomStream& rng);

/// 1-bit measurements y_i = sign(<x_i, theta>) + delta_i. With snr_db absent
/// the responses are exact signs; otherwise delta_i = sigma_noise * h_i where
/// h_i is a unit-variance Pareto difference with exponent noise_q and
/// sigma_noise^2 = 10^(-snr_db/10) (signal variance is 1 for the sign link).
Dataset one_bit_generate(const SparseSignal& signal, const EllipticalDesign& design,
                         std::optional<double> snr_db, int m, RandomStream& rng,
                         double noise_q = 2.1);

/// Symmetric square root of a covariance matrix, for callers holding Sigma
/// rather than Sigma^{1/2}. Throws unless sigma is symmetric positive definite.
Eigen::MatrixXd shape_from_covariance(const Eigen::MatrixXd& sigma);

}  // namespace robrec
