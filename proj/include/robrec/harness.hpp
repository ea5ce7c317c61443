#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "robrec/distributions.hpp"
#include "robrec/estimators.hpp"
#include "robrec/lasso.hpp"
#include "robrec/rng.hpp"

namespace robrec {

enum class Method { Robust, Lasso };
enum class DesignKind { ParetoSphere, Gaussian };

/// How cross-validation scores a candidate fit. OracleRelativeError matches
/// the simulation protocol (the true signal is known); ValidationLoss scores
/// the truncated loss on held-out data and needs no ground truth.
enum class CvCriterion { OracleRelativeError, ValidationLoss };

/// Eight log-spaced points in [1e-3, 1], bracketing the theoretical
/// lambda ~ sqrt(log(d) / m) for the scales simulated here.
std::vector<double> default_lambda_grid();

struct ExperimentSpec {
  int d = 512;
  int m = 128;
  int s = 5;
  double q_pareto = 2.1;
  std::optional<double> snr_db;  // absent = noiseless
  int n_trials = 200;
  std::uint64_t seed = 0;
  double kappa = 1.0;
  int cv_folds = 2;
  // Spans the hard-truncation regime (small c clips nearly every sample,
  // approximating an equal-weight sign average, which is where heavy-tailed
  // radii are handled best) up to effectively untruncated.
  std::vector<double> grid_c = {0.01, 0.05, 0.25, 1.0, 4.0};
  std::vector<double> grid_lambda = default_lambda_grid();
  std::vector<double> grid_lambda_lasso = default_lambda_grid();
  DesignKind design_kind = DesignKind::ParetoSphere;
  CvCriterion cv_criterion = CvCriterion::OracleRelativeError;
};

struct CvChoice {
  double scale_c = 1.0;  // tau scale; meaningful for the robust method only
  double lambda = 0.0;
};

struct TrialRecord {
  int trial = 0;
  double robust_error = 0.0;
  double lasso_error = 0.0;
  double robust_c = 1.0;
  double robust_lambda = 0.0;
  double lasso_lambda = 0.0;
};

struct MethodSummary {
  double median = 0.0;
  double mean = 0.0;
  double iqr = 0.0;
};

/// Equal-width bins over [0, 2], the full range of the relative error.
struct ErrorHistogram {
  std::vector<double> edges;  // bins + 1 ascending edges
  std::vector<int> robust_counts;
  std::vector<int> lasso_counts;
};

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<TrialRecord> trials;
  MethodSummary robust;
  MethodSummary lasso;
  ErrorHistogram histogram;
  double wall_time_seconds = 0.0;  // diagnostic; not part of the serialized report
};

/// l2 distance between the normalized vectors; scale-invariant. A zero
/// estimate normalizes to the zero vector, giving error exactly 1.
double relative_error(const Eigen::VectorXd& theta_hat, const Eigen::VectorXd& theta_star);

/// k-fold cross-validation over the spec's grids: samples are shuffled once,
/// split into contiguous folds, and each grid point is scored by the fold-mean
/// of the configured criterion. Ties break toward smaller lambda, then smaller
/// c. theta_star is required for the oracle criterion and ignored otherwise.
CvChoice cross_validate(const Dataset& data, const ExperimentSpec& spec, Method method,
                        const Eigen::VectorXd* theta_star, RandomStream& rng);

/// Full simulation: per trial draws a sparse signal, a design and 1-bit
/// responses, cross-validates both estimators, fits them on the full sample
/// and records relative errors. Trials use independent substreams of
/// spec.seed, so identical specs reproduce identical reports. A failing trial
/// aborts the run naming the trial index.
ExperimentReport run_experiment(const ExperimentSpec& spec);

/// Summary helpers shared by the report and the tests.
double median_of(std::vector<double> values);
double quantile_of(std::vector<double> values, double p);  // linear interpolation

}  // namespace robrec
