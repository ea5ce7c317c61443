#include "robrec/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace robrec {

RadialLaw RadialLaw::pareto_difference(double q) {
  if (!(q > 2.0)) {
    throw std::invalid_argument("pareto_difference: q must exceed 2, got " + std::to_string(q));
  }
  return {RadialKind::ParetoDifference, q};
}

double pareto_variance(double q) {
  if (!(q > 2.0)) {
    throw std::invalid_argument("pareto_variance: q must exceed 2");
  }
  return q / ((q - 1.0) * (q - 1.0) * (q - 2.0));
}

double pareto_quantile(double q, double u) {
  if (!(q > 1.0)) {
    throw std::invalid_argument("pareto_quantile: q must exceed 1");
  }
  if (!(u >= 0.0 && u < 1.0)) {
    throw std::invalid_argument("pareto_quantile: u must be in [0, 1)");
  }
  return std::pow(1.0 - u, -1.0 / q) - 1.0;
}

Eigen::VectorXd sample_uniform_sphere(int d, RandomStream& rng) {
  if (d < 1) {
    throw std::invalid_argument("sample_uniform_sphere: dimension must be positive");
  }
  Eigen::VectorXd v(d);
  double norm = 0.0;
  do {
    for (int k = 0; k < d; ++k) v[k] = rng.normal();
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

double sample_radial(const RadialLaw& law, RandomStream& rng) {
  switch (law.kind) {
    case RadialKind::GaussianRadius:
      return rng.normal();
    case RadialKind::UnitConstant:
      return 1.0;
    case RadialKind::ParetoDifference: {
      const double xi1 = pareto_quantile(law.pareto_q, rng.uniform());
      const double xi2 = pareto_quantile(law.pareto_q, rng.uniform());
      return (xi1 - xi2) / std::sqrt(2.0 * pareto_variance(law.pareto_q));
    }
  }
  throw std::invalid_argument("sample_radial: unknown radial law");
}

Eigen::MatrixXd sample_design(const EllipticalDesign& design, int m, RandomStream& rng) {
  const int d = design.dim;
  if (d < 1) {
    throw std::invalid_argument("sample_design: dimension must be positive");
  }
  if (m < 1) {
    throw std::invalid_argument("sample_design: sample count must be positive");
  }
  if (design.radial.kind == RadialKind::ParetoDifference && !(design.radial.pareto_q > 2.0)) {
    throw std::invalid_argument("sample_design: ParetoDifference law requires q > 2");
  }

  Eigen::MatrixXd x(m, d);
  if (design.radial.kind == RadialKind::GaussianRadius) {
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < d; ++k) x(i, k) = rng.normal();
    }
  } else {
    const double root_d = std::sqrt(static_cast<double>(d));
    for (int i = 0; i < m; ++i) {
      const double mu = sample_radial(design.radial, rng);
      x.row(i) = (mu * root_d) * sample_uniform_sphere(d, rng).transpose();
    }
  }

  if (design.shape) {
    const Eigen::MatrixXd& s = *design.shape;
    if (s.rows() != d || s.cols() != d) {
      throw std::invalid_argument("sample_design: shape matrix has wrong dimensions");
    }
    x = x * s;  // rows become (Sigma^{1/2} x_i)^T for symmetric s
  }
  return x;
}

SparseSignal sample_sparse_signal(int d, int s, RandomStream& rng) {
  if (d < 1 || s < 1 || s > d) {
    throw std::invalid_argument("sample_sparse_signal: need 1 <= s <= d");
  }
  // Partial Fisher-Yates over [0, d) picks the support without replacement.
  std::vector<int> idx(d);
  for (int k = 0; k < d; ++k) idx[k] = k;
  for (int k = 0; k < s; ++k) {
    const int j = k + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(d - k)));
    std::swap(idx[k], idx[j]);
  }
  SparseSignal signal;
  signal.support.assign(idx.begin(), idx.begin() + s);
  std::sort(signal.support.begin(), signal.support.end());
  signal.values = Eigen::VectorXd::Zero(d);
  for (int j : signal.support) signal.values[j] = rng.uniform();
  return signal;
}

namespace {
double sign_of(double v) { return (v > 0.0) ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }
}  // namespace

Dataset one_bit_generate(const SparseSignal& signal, const EllipticalDesign& design,
                         std::optional<double> snr_db, int m, RandomStream& rng,
                         double noise_q) {
  if (signal.dim() != design.dim) {
    throw std::invalid_argument("one_bit_generate: signal and design dimensions differ");
  }
  Dataset data;
  data.x = sample_design(design, m, rng);
  data.y = (data.x * signal.values).unaryExpr([](double v) { return sign_of(v); });
  if (snr_db) {
    const double sigma_noise = std::sqrt(std::pow(10.0, -(*snr_db) / 10.0));
    const RadialLaw noise_law = RadialLaw::pareto_difference(noise_q);
    for (int i = 0; i < m; ++i) data.y[i] += sigma_noise * sample_radial(noise_law, rng);
  }
  return data;
}

Eigen::MatrixXd shape_from_covariance(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols()) {
    throw std::invalid_argument("shape_from_covariance: matrix must be square");
  }
  if (!sigma.isApprox(sigma.transpose(), 1e-12)) {
    throw std::invalid_argument("shape_from_covariance: matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("shape_from_covariance: matrix must be positive definite");
  }
  return eig.operatorSqrt();
}

}  // namespace robrec
