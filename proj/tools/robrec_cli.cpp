#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "robrec/estimators.hpp"
#include "robrec/geometry.hpp"
#include "robrec/harness.hpp"
#include "robrec/io.hpp"
#include "robrec/lasso.hpp"

namespace {

void add_simulate(CLI::App& app) {
  auto* cmd = app.add_subcommand("simulate", "Run the 1-bit recovery experiment");
  auto spec = std::make_shared<robrec::ExperimentSpec>();
  auto snr = std::make_shared<double>(0.0);
  auto design = std::make_shared<std::string>("pareto-sphere");
  auto criterion = std::make_shared<std::string>("oracle-relative-error");
  auto out = std::make_shared<std::string>();
  auto hist = std::make_shared<std::string>();
  auto trials_csv = std::make_shared<std::string>();

  cmd->add_option("--d", spec->d, "ambient dimension")->capture_default_str();
  cmd->add_option("--m", spec->m, "sample size")->capture_default_str();
  cmd->add_option("--s", spec->s, "sparsity of the true signal")->capture_default_str();
  cmd->add_option("--q", spec->q_pareto, "Pareto tail exponent")->capture_default_str();
  auto* snr_opt = cmd->add_option("--snr-db", *snr, "SNR in dB; omit for noiseless responses");
  cmd->add_option("--trials", spec->n_trials, "number of trials")->capture_default_str();
  cmd->add_option("--seed", spec->seed, "master seed")->capture_default_str();
  cmd->add_option("--kappa", spec->kappa, "truncation moment parameter")->capture_default_str();
  cmd->add_option("--folds", spec->cv_folds, "cross-validation folds")->capture_default_str();
  cmd->add_option("--design", *design, "pareto-sphere or gaussian")->capture_default_str();
  cmd->add_option("--cv-criterion", *criterion, "oracle-relative-error or validation-loss")
      ->capture_default_str();
  cmd->add_option("--grid-c", spec->grid_c, "tau scale grid for the robust estimator");
  cmd->add_option("--grid-lambda", spec->grid_lambda, "lambda grid for the robust estimator");
  cmd->add_option("--grid-lambda-lasso", spec->grid_lambda_lasso, "lambda grid for the Lasso");
  cmd->add_option("--out", *out, "write the JSON report here");
  cmd->add_option("--hist", *hist, "write the histogram CSV here");
  cmd->add_option("--trials-csv", *trials_csv, "write the per-trial CSV here");

  cmd->callback([=]() {
    if (snr_opt->count() > 0) spec->snr_db = *snr;
    spec->design_kind = robrec::design_kind_from_string(*design);
    spec->cv_criterion = robrec::cv_criterion_from_string(*criterion);
    const robrec::ExperimentReport report = robrec::run_experiment(*spec);
    if (!out->empty()) robrec::write_text_file(*out, robrec::report_to_json(report));
    if (!hist->empty()) robrec::write_text_file(*hist, robrec::histogram_to_csv(report));
    if (!trials_csv->empty()) robrec::write_text_file(*trials_csv, robrec::trials_to_csv(report));
    std::printf("trials: %d\n", static_cast<int>(report.trials.size()));
    std::printf("robust  median %.6f  mean %.6f  iqr %.6f\n", report.robust.median,
                report.robust.mean, report.robust.iqr);
    std::printf("lasso   median %.6f  mean %.6f  iqr %.6f\n", report.lasso.median,
                report.lasso.mean, report.lasso.iqr);
    std::printf("wall time: %.2f s\n", report.wall_time_seconds);
  });
}

void add_estimate(CLI::App& app) {
  auto* cmd = app.add_subcommand("estimate", "Fit one estimator on a dataset CSV");
  auto data_path = std::make_shared<std::string>();
  auto method = std::make_shared<std::string>();
  auto lambda = std::make_shared<double>(0.0);
  auto scale_c = std::make_shared<double>(1.0);
  auto kappa = std::make_shared<double>(1.0);
  auto out = std::make_shared<std::string>();

  cmd->add_option("--data", *data_path, "dataset CSV (header y,x1,...,xd)")->required();
  cmd->add_option("--method", *method, "robust or lasso")
      ->required()
      ->check(CLI::IsMember({"robust", "lasso"}));
  cmd->add_option("--lambda", *lambda, "regularization parameter")->required();
  cmd->add_option("--c", *scale_c, "tau scale (robust only)")->capture_default_str();
  cmd->add_option("--kappa", *kappa, "truncation moment parameter (robust only)")
      ->capture_default_str();
  cmd->add_option("--out", *out, "write the estimate here, one coordinate per line");

  cmd->callback([=]() {
    const robrec::Dataset data = robrec::import_dataset(*data_path);
    robrec::RecoveryResult fit;
    if (*method == "robust") {
      robrec::TruncationConfig config;
      config.kappa = *kappa;
      config.scale_c = *scale_c;
      const robrec::TransformedData transformed = robrec::transform(data);
      fit = robrec::soft_threshold_estimate(robrec::robust_direction(transformed, config),
                                            *lambda);
      fit.tau_used = config.effective_tau(data.m());
    } else {
      robrec::LassoConfig config;
      config.lambda = *lambda;
      fit = robrec::lasso_fit(data.x / std::sqrt(static_cast<double>(data.m())), data.y, config);
    }
    if (!out->empty()) {
      std::string text = "theta\n";
      char buf[32];
      for (int k = 0; k < fit.theta.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", fit.theta[k]);
        text += buf;
      }
      robrec::write_text_file(*out, text);
    }
    std::printf("method: %s  m: %d  d: %d\n", method->c_str(), data.m(), data.d());
    std::printf("lambda: %g  tau: %g  nnz: %d  iterations: %d\n", fit.lambda_used, fit.tau_used,
                fit.nnz, fit.iterations);
  });
}

void add_width(CLI::App& app) {
  auto* cmd = app.add_subcommand("width", "Monte-Carlo Gaussian mean width of a norm ball");
  auto set_name = std::make_shared<std::string>();
  auto dims = std::make_shared<std::vector<int>>();
  auto samples = std::make_shared<int>(10000);
  auto seed = std::make_shared<std::uint64_t>(0);
  auto radius = std::make_shared<double>(1.0);

  cmd->add_option("--set", *set_name, "l1, l2, nuclear, or singleton")
      ->required()
      ->check(CLI::IsMember({"l1", "l2", "nuclear", "singleton"}));
  cmd->add_option("--dim", *dims, "dimension (two values d1 d2 for nuclear)")
      ->required()
      ->expected(1, 2);
  cmd->add_option("--samples", *samples, "Monte-Carlo draws")->capture_default_str();
  cmd->add_option("--seed", *seed, "random seed")->capture_default_str();
  cmd->add_option("--radius", *radius, "ball radius")->capture_default_str();

  cmd->callback([=]() {
    robrec::SetDescriptor set;
    if (*set_name == "l1") {
      set = robrec::SetDescriptor::l1_ball(dims->at(0), *radius);
    } else if (*set_name == "l2") {
      set = robrec::SetDescriptor::l2_ball(dims->at(0), *radius);
    } else if (*set_name == "nuclear") {
      if (dims->size() != 2) throw CLI::ValidationError("--dim", "nuclear needs --dim d1 d2");
      set = robrec::SetDescriptor::nuclear_ball(dims->at(0), dims->at(1), *radius);
    } else {
      set = robrec::SetDescriptor::singleton(dims->at(0));
    }
    robrec::RandomStream rng(*seed);
    const robrec::WidthEstimate est = robrec::mean_width_mc(set, *samples, rng);
    std::printf("mean width: %.6f  std error: %.6f  samples: %d\n", est.value, est.std_error,
                est.n_samples);
  });
}

void add_bounds(CLI::App& app) {
  auto* cmd = app.add_subcommand("bounds", "Closed-form descent-cone and rate bounds");
  auto kind = std::make_shared<std::string>();
  auto s = std::make_shared<double>(0.0);
  auto d = std::make_shared<double>(0.0);
  auto r = std::make_shared<double>(0.0);
  auto d1 = std::make_shared<double>(0.0);
  auto d2 = std::make_shared<double>(0.0);
  auto m = std::make_shared<int>(0);
  auto c0 = std::make_shared<double>(2.0);

  cmd->add_option("--kind", *kind, "sparse or lowrank")
      ->required()
      ->check(CLI::IsMember({"sparse", "lowrank"}));
  cmd->add_option("--s", *s, "sparsity (sparse)");
  cmd->add_option("--d", *d, "ambient dimension (sparse)");
  cmd->add_option("--r", *r, "rank (lowrank)");
  cmd->add_option("--d1", *d1, "rows (lowrank)");
  cmd->add_option("--d2", *d2, "columns (lowrank)");
  cmd->add_option("--m", *m, "sample size; prints the rate when given");
  cmd->add_option("--c0", *c0, "restricted-set constant")->capture_default_str();

  cmd->callback([=]() {
    robrec::ConeBound cone;
    if (*kind == "sparse") {
      cone = robrec::ConeBound::sparse(*s, *d, *c0);
      std::printf("sparse descent cone: s=%g d=%g c0=%g\n", *s, *d, *c0);
    } else {
      cone = robrec::ConeBound::low_rank(*r, *d1, *d2, *c0);
      std::printf("low-rank descent cone: r=%g d1=%g d2=%g c0=%g\n", *r, *d1, *d2, *c0);
    }
    std::printf("width bound: %.6f  (squared: %.6f)\n", cone.width_bound,
                cone.width_bound * cone.width_bound);
    std::printf("restricted compatibility bound: %.6f\n", cone.compat_bound);
    if (*m > 0) {
      std::printf("error-rate scale at m=%d: %.6f\n", *m, robrec::theoretical_error_rate(cone, *m));
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust recovery from non-linear heavy-tailed measurements"};
  app.require_subcommand(1);
  add_simulate(app);
  add_estimate(app);
  add_width(app);
  add_bounds(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
