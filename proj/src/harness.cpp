#include "robrec/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace robrec {

std::vector<double> default_lambda_grid() {
  // Log-spaced around the theoretical lambda ~ sqrt(log(d)/m) (about 0.23 for
  // d = 512, m = 128, and ~1.9x smaller at m = 512). A wider [1e-3, 1] grid
  // leaves no point inside the narrow error valley at these scales.
  std::vector<double> grid(8);
  for (int k = 0; k < 8; ++k) {
    grid[k] = std::pow(10.0, -2.0 + 2.0 * k / 7.0);
  }
  return grid;
}

double relative_error(const Eigen::VectorXd& theta_hat, const Eigen::VectorXd& theta_star) {
  if (theta_hat.size() != theta_star.size()) {
    throw std::invalid_argument("relative_error: dimension mismatch");
  }
  const double star_norm = theta_star.norm();
  if (star_norm == 0.0) {
    throw std::invalid_argument("relative_error: theta_star must be nonzero");
  }
  const double hat_norm = theta_hat.norm();
  if (hat_norm == 0.0) return 1.0;
  return (theta_hat / hat_norm - theta_star / star_norm).norm();
}

double quantile_of(std::vector<double> values, double p) {
  if (values.empty()) {
    throw std::invalid_argument("quantile_of: empty sample");
  }
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  return values[lo] + (h - std::floor(h)) * (values[hi] - values[lo]);
}

double median_of(std::vector<double> values) { return quantile_of(std::move(values), 0.5); }

namespace {

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& mat, const std::vector<int>& rows) {
  Eigen::MatrixXd out(static_cast<int>(rows.size()), mat.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<int>(i)) = mat.row(rows[i]);
  return out;
}

Eigen::VectorXd take_rows(const Eigen::VectorXd& vec, const std::vector<int>& rows) {
  Eigen::VectorXd out(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out[static_cast<int>(i)] = vec[rows[i]];
  return out;
}

/// Truncated loss on held-out data, the ground-truth-free CV score. The
/// truncation level is tau(m_holdout) at scale 1 so that every grid point is
/// scored on the same criterion.
double validation_loss(const TransformedData& holdout, double kappa,
                       const Eigen::VectorXd& theta) {
  TruncationConfig config;
  config.kappa = kappa;
  const Eigen::VectorXd q_trunc = truncate(holdout.q, config.effective_tau(holdout.m()));
  const double cross = q_trunc.dot(holdout.u_tilde * theta) / holdout.m();
  return theta.squaredNorm() - 2.0 * cross;
}

struct FoldSplit {
  std::vector<std::vector<int>> train;
  std::vector<std::vector<int>> holdout;
};

FoldSplit make_folds(int m, int folds, RandomStream& rng) {
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  for (int k = m - 1; k > 0; --k) {
    const int j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k + 1)));
    std::swap(perm[k], perm[j]);
  }
  FoldSplit split;
  split.train.resize(folds);
  split.holdout.resize(folds);
  for (int f = 0; f < folds; ++f) {
    const int lo = static_cast<int>(static_cast<long long>(f) * m / folds);
    const int hi = static_cast<int>(static_cast<long long>(f + 1) * m / folds);
    for (int i = 0; i < m; ++i) {
      (i >= lo && i < hi ? split.holdout[f] : split.train[f]).push_back(perm[i]);
    }
  }
  return split;
}

struct ScoredChoice {
  double score;
  double lambda;
  double scale_c;
};

bool better(const ScoredChoice& a, const ScoredChoice& b) {
  if (a.score != b.score) return a.score < b.score;
  if (a.lambda != b.lambda) return a.lambda < b.lambda;
  return a.scale_c < b.scale_c;
}

}  // namespace

CvChoice cross_validate(const Dataset& data, const ExperimentSpec& spec, Method method,
                        const Eigen::VectorXd* theta_star, RandomStream& rng) {
  const auto& lambda_grid = method == Method::Robust ? spec.grid_lambda : spec.grid_lambda_lasso;
  if (lambda_grid.empty() || (method == Method::Robust && spec.grid_c.empty())) {
    throw std::invalid_argument("cross_validate: parameter grid is empty");
  }
  if (spec.cv_folds < 2) {
    throw std::invalid_argument("cross_validate: need at least two folds");
  }

  // A single grid point needs no validation fits (and no ground truth).
  if (lambda_grid.size() == 1 && (method == Method::Lasso || spec.grid_c.size() == 1)) {
    return {method == Method::Robust ? spec.grid_c.front() : 1.0, lambda_grid.front()};
  }

  if (spec.cv_criterion == CvCriterion::OracleRelativeError && theta_star == nullptr) {
    throw std::invalid_argument("cross_validate: oracle criterion requires theta_star");
  }

  const int m = data.m();
  if (m < 2 * spec.cv_folds) {
    throw std::invalid_argument("cross_validate: dataset too small for the fold count");
  }
  const FoldSplit split = make_folds(m, spec.cv_folds, rng);

  const std::vector<double> c_grid = method == Method::Robust ? spec.grid_c
                                                              : std::vector<double>{1.0};
  std::vector<double> score_sum(c_grid.size() * lambda_grid.size(), 0.0);
  const bool oracle = spec.cv_criterion == CvCriterion::OracleRelativeError;

  const TransformedData full = transform(data);
  for (int f = 0; f < spec.cv_folds; ++f) {
    const auto& train_idx = split.train[f];
    TransformedData holdout;
    if (!oracle) {
      holdout.u_tilde = take_rows(full.u_tilde, split.holdout[f]);
      holdout.q = take_rows(full.q, split.holdout[f]);
    }
    const auto score_fit = [&](const Eigen::VectorXd& theta) {
      return oracle ? relative_error(theta, *theta_star)
                    : validation_loss(holdout, spec.kappa, theta);
    };

    if (method == Method::Robust) {
      TransformedData train;
      train.u_tilde = take_rows(full.u_tilde, train_idx);
      train.q = take_rows(full.q, train_idx);
      for (std::size_t ci = 0; ci < c_grid.size(); ++ci) {
        TruncationConfig config;
        config.kappa = spec.kappa;
        config.scale_c = c_grid[ci];
        const Eigen::VectorXd b = robust_direction(train, config);
        for (std::size_t li = 0; li < lambda_grid.size(); ++li) {
          const RecoveryResult fit = soft_threshold_estimate(b, lambda_grid[li]);
          score_sum[ci * lambda_grid.size() + li] += score_fit(fit.theta);
        }
      }
    } else {
      const int m_train = static_cast<int>(train_idx.size());
      const Eigen::MatrixXd x_train =
          take_rows(data.x, train_idx) / std::sqrt(static_cast<double>(m_train));
      const Eigen::VectorXd y_train = take_rows(data.y, train_idx);
      // Warm-start along the lambda path, largest first.
      std::vector<std::size_t> order(lambda_grid.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return lambda_grid[a] > lambda_grid[b]; });
      Eigen::VectorXd warm = Eigen::VectorXd::Zero(data.d());
      for (std::size_t li : order) {
        LassoConfig config;
        config.lambda = lambda_grid[li];
        const RecoveryResult fit = lasso_fit(x_train, y_train, config, &warm);
        warm = fit.theta;
        score_sum[li] += score_fit(fit.theta);
      }
    }
  }

  ScoredChoice best{0.0, 0.0, 0.0};
  bool first = true;
  for (std::size_t ci = 0; ci < c_grid.size(); ++ci) {
    for (std::size_t li = 0; li < lambda_grid.size(); ++li) {
      const ScoredChoice candidate{score_sum[ci * lambda_grid.size() + li] / spec.cv_folds,
                                   lambda_grid[li], c_grid[ci]};
      if (first || better(candidate, best)) {
        best = candidate;
        first = false;
      }
    }
  }
  return {best.scale_c, best.lambda};
}

namespace {

void validate_spec(const ExperimentSpec& spec) {
  if (spec.d < 1 || spec.m < 1 || spec.s < 1 || spec.s > spec.d) {
    throw std::invalid_argument("run_experiment: invalid problem dimensions");
  }
  if (spec.n_trials < 1) {
    throw std::invalid_argument("run_experiment: need at least one trial");
  }
  if (spec.grid_c.empty() || spec.grid_lambda.empty() || spec.grid_lambda_lasso.empty()) {
    throw std::invalid_argument("run_experiment: parameter grids must be nonempty");
  }
  if (spec.cv_folds < 2) {
    throw std::invalid_argument("run_experiment: need at least two folds");
  }
  if (spec.design_kind == DesignKind::ParetoSphere && !(spec.q_pareto > 2.0)) {
    throw std::invalid_argument("run_experiment: pareto-sphere design requires q > 2");
  }
}

EllipticalDesign make_design(const ExperimentSpec& spec) {
  EllipticalDesign design;
  design.dim = spec.d;
  design.radial = spec.design_kind == DesignKind::ParetoSphere
                      ? RadialLaw::pareto_difference(spec.q_pareto)
                      : RadialLaw::gaussian();
  return design;
}

ErrorHistogram build_histogram(const std::vector<TrialRecord>& trials) {
  constexpr int kBins = 30;
  constexpr double kHi = 2.0;  // relative errors live in [0, 2]
  ErrorHistogram hist;
  hist.edges.resize(kBins + 1);
  for (int k = 0; k <= kBins; ++k) hist.edges[k] = kHi * k / kBins;
  hist.robust_counts.assign(kBins, 0);
  hist.lasso_counts.assign(kBins, 0);
  const auto bin_of = [&](double err) {
    const int bin = static_cast<int>(err / kHi * kBins);
    return std::clamp(bin, 0, kBins - 1);
  };
  for (const TrialRecord& t : trials) {
    ++hist.robust_counts[bin_of(t.robust_error)];
    ++hist.lasso_counts[bin_of(t.lasso_error)];
  }
  return hist;
}

MethodSummary summarize(std::vector<double> errors) {
  MethodSummary s;
  s.mean = std::accumulate(errors.begin(), errors.end(), 0.0) / errors.size();
  s.median = median_of(errors);
  s.iqr = quantile_of(errors, 0.75) - quantile_of(errors, 0.25);
  return s;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  validate_spec(spec);
  const auto start = std::chrono::steady_clock::now();

  ExperimentReport report;
  report.spec = spec;
  report.trials.reserve(spec.n_trials);
  const EllipticalDesign design = make_design(spec);

  for (int trial = 0; trial < spec.n_trials; ++trial) {
    try {
      RandomStream rng(derive_stream_seed(spec.seed, static_cast<std::uint64_t>(trial)));
      const SparseSignal signal = sample_sparse_signal(spec.d, spec.s, rng);
      const Dataset data =
          one_bit_generate(signal, design, spec.snr_db, spec.m, rng, spec.q_pareto);

      TrialRecord record;
      record.trial = trial;

      const CvChoice robust_choice =
          cross_validate(data, spec, Method::Robust, &signal.values, rng);
      TruncationConfig config;
      config.kappa = spec.kappa;
      config.scale_c = robust_choice.scale_c;
      const TransformedData transformed = transform(data);
      const RecoveryResult robust_fit =
          soft_threshold_estimate(robust_direction(transformed, config), robust_choice.lambda);
      record.robust_error = relative_error(robust_fit.theta, signal.values);
      record.robust_c = robust_choice.scale_c;
      record.robust_lambda = robust_choice.lambda;

      const CvChoice lasso_choice =
          cross_validate(data, spec, Method::Lasso, &signal.values, rng);
      LassoConfig lasso_config;
      lasso_config.lambda = lasso_choice.lambda;
      const RecoveryResult lasso_result =
          lasso_fit(data.x / std::sqrt(static_cast<double>(spec.m)), data.y, lasso_config);
      record.lasso_error = relative_error(lasso_result.theta, signal.values);
      record.lasso_lambda = lasso_choice.lambda;

      report.trials.push_back(record);
    } catch (const std::exception& e) {
      throw std::runtime_error("run_experiment: trial " + std::to_string(trial) +
                               " failed: " + e.what());
    }
  }

  std::vector<double> robust_errors, lasso_errors;
  robust_errors.reserve(report.trials.size());
  lasso_errors.reserve(report.trials.size());
  for (const TrialRecord& t : report.trials) {
    robust_errors.push_back(t.robust_error);
    lasso_errors.push_back(t.lasso_error);
  }
  report.robust = summarize(std::move(robust_errors));
  report.lasso = summarize(std::move(lasso_errors));
  report.histogram = build_histogram(report.trials);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace robrec
