#pragma once

#include <Eigen/Dense>
#include <vector>

#include "robrec/estimators.hpp"

namespace robrec {

struct LassoConfig {
  double lambda = 0.0;
  double tol = 1e-8;      // max coordinate change between sweeps
  int max_iter = 10000;   // full sweeps
};

/// Cyclic coordinate descent for |X theta - y|^2 + lambda |theta|_1 with a
/// cached residual (per-sweep cost O(m d), suited to the m << d regime).
/// `warm_start` seeds the iterate; `objective_trace`, when given, records the
/// objective after every sweep. iterations == max_iter flags non-convergence.
RecoveryResult lasso_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                         const LassoConfig& config,
                         const Eigen::VectorXd* warm_start = nullptr,
                         std::vector<double>* objective_trace = nullptr);

}  // namespace robrec
