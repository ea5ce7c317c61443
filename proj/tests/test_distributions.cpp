#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "robrec/distributions.hpp"

using namespace robrec;

TEST_SUITE_BEGIN("distributions");

TEST_CASE("sphere samples are unit vectors") {
  RandomStream rng(1);
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd u = sample_uniform_sphere(3, rng);
    CHECK(std::abs(u.norm() - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(sample_uniform_sphere(0, rng), std::invalid_argument);
}

TEST_CASE("sphere in one dimension is a fair coin") {
  RandomStream rng(2);
  int plus = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd u = sample_uniform_sphere(1, rng);
    CHECK(std::abs(std::abs(u[0]) - 1.0) <= 1e-12);
    if (u[0] > 0) ++plus;
  }
  CHECK(std::abs(static_cast<double>(plus) / n - 0.5) <= 0.05);
}

TEST_CASE("sphere samples average out in high dimension") {
  RandomStream rng(3);
  const int d = 512, n = 10000;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < n; ++i) mean += sample_uniform_sphere(d, rng);
  mean /= n;
  CHECK(mean.norm() <= 0.05);
}

TEST_CASE("sphere concentration matches the exponential tail bound") {
  // P(<U, v> >= Delta) <= exp(-d Delta^2 / 2) for fixed unit v.
  RandomStream rng(4);
  const int d = 128, n = 100000;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  v[0] = 1.0;
  int exceed[3] = {0, 0, 0};
  const double deltas[3] = {0.1, 0.2, 0.3};
  for (int i = 0; i < n; ++i) {
    const double inner = sample_uniform_sphere(d, rng).dot(v);
    for (int j = 0; j < 3; ++j) {
      if (inner >= deltas[j]) ++exceed[j];
    }
  }
  for (int j = 0; j < 3; ++j) {
    const double freq = static_cast<double>(exceed[j]) / n;
    const double se = std::sqrt(freq * (1.0 - freq) / n);
    CHECK(freq <= std::exp(-d * deltas[j] * deltas[j] / 2.0) + 3.0 * se);
  }
}

TEST_CASE("pareto quantile inverts the CDF") {
  CHECK(pareto_quantile(2.1, 0.0) == 0.0);
  CHECK(std::abs(pareto_quantile(2.1, 0.75) - 0.9350) <= 1e-3);
  CHECK_THROWS_AS(pareto_quantile(2.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(pareto_quantile(2.1, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(pareto_quantile(1.0, 0.5), std::invalid_argument);
}

TEST_CASE("pareto sample mean matches the quadrature oracle") {
  const double oracle = oracles::pareto_mean_quadrature(2.1);
  CHECK(std::abs(oracle - 1.0 / 1.1) <= 1e-4);  // analytic mean 1/(q-1)
  RandomStream rng(5);
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = pareto_quantile(2.1, rng.uniform());
    sum += t;
    sum_sq += t * t;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq - sum * sum / n) / (n - 1) / n);
  CHECK(std::abs(mean - oracle) <= 3.0 * se);
}

TEST_CASE("pareto variance constant") {
  CHECK(std::abs(pareto_variance(2.1) - 17.355) <= 1e-3);
  CHECK_THROWS_AS(pareto_variance(2.0), std::invalid_argument);
  CHECK_THROWS_AS(RadialLaw::pareto_difference(2.0), std::invalid_argument);
}

TEST_CASE("pareto-difference radial draws are symmetric and correctly scaled") {
  const RadialLaw law = RadialLaw::pareto_difference(2.1);
  RandomStream rng(6);
  const int n = 100000;
  const double cap = 5.0;
  double sum = 0.0, capped_sq = 0.0, capped_fourth = 0.0;
  int positive = 0;
  for (int i = 0; i < n; ++i) {
    const double mu = sample_radial(law, rng);
    sum += mu;
    const double clipped = std::min(mu * mu, cap * cap);
    capped_sq += clipped;
    capped_fourth += clipped * clipped;
    if (mu > 0) ++positive;
  }
  CHECK(std::abs(sum / n) <= 0.02);

  // The raw sample variance of a q = 2.1 law does not concentrate at any
  // feasible n (infinite fourth moment), so the scale is checked through the
  // truncated second moment against an exact quadrature oracle instead.
  const double mc = capped_sq / n;
  const double se =
      std::sqrt((capped_fourth - capped_sq * capped_sq / n) / (n - 1) / n);
  const double exact = oracles::pareto_difference_truncated_second_moment(2.1, cap);
  CHECK(std::abs(mc - exact) <= 3.0 * se);
  CHECK(exact > 0.05);  // nontrivial share of Var = 1 below the cap...
  CHECK(exact < 1.0);   // ...but far from all of it: the tail is heavy

  const double p = static_cast<double>(positive) / n;
  CHECK(p >= 0.48);
  CHECK(p <= 0.52);
}

TEST_CASE("unit-constant design rows have norm sqrt(d)") {
  EllipticalDesign design{4, RadialLaw::unit_constant(), std::nullopt};
  RandomStream rng(7);
  const Eigen::MatrixXd x = sample_design(design, 32, rng);
  for (int i = 0; i < x.rows(); ++i) {
    CHECK(std::abs(x.row(i).norm() - 2.0) <= 1e-12);
  }
}

TEST_CASE("gaussian design is isotropic") {
  EllipticalDesign design{16, RadialLaw::gaussian(), std::nullopt};
  RandomStream rng(8);
  const Eigen::MatrixXd x = sample_design(design, 100000, rng);
  const Eigen::MatrixXd cov = x.transpose() * x / static_cast<double>(x.rows());
  const Eigen::MatrixXd dev = cov - Eigen::MatrixXd::Identity(16, 16);
  CHECK(dev.cwiseAbs().maxCoeff() <= 0.05);
}

TEST_CASE("pareto-sphere design matches the experiment protocol dimensions") {
  EllipticalDesign design{512, RadialLaw::pareto_difference(2.1), std::nullopt};
  RandomStream rng(9);
  const Eigen::MatrixXd x = sample_design(design, 128, rng);
  CHECK(x.rows() == 128);
  CHECK(x.cols() == 512);
}

TEST_CASE("shaped designs have covariance Sigma") {
  Eigen::MatrixXd sigma(3, 3);
  sigma << 4.0, 0.5, 0.0, 0.5, 1.0, 0.2, 0.0, 0.2, 0.25;
  const Eigen::MatrixXd shape = shape_from_covariance(sigma);
  CHECK((shape * shape - sigma).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(shape.isApprox(shape.transpose(), 1e-12));

  EllipticalDesign design{3, RadialLaw::gaussian(), shape};
  RandomStream rng(10);
  const Eigen::MatrixXd x = sample_design(design, 200000, rng);
  const Eigen::MatrixXd cov = x.transpose() * x / static_cast<double>(x.rows());
  CHECK((cov - sigma).cwiseAbs().maxCoeff() <= 0.1);

  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
  CHECK_THROWS_AS(shape_from_covariance(bad), std::invalid_argument);
}

TEST_CASE("sparse signals have the requested support") {
  RandomStream rng(11);
  const SparseSignal a = sample_sparse_signal(512, 5, rng);
  CHECK(static_cast<int>(a.support.size()) == 5);
  int nnz = 0;
  for (int k = 0; k < a.dim(); ++k) {
    if (a.values[k] != 0.0) ++nnz;
  }
  CHECK(nnz == 5);

  const SparseSignal b = sample_sparse_signal(3, 3, rng);
  for (int k = 0; k < 3; ++k) {
    CHECK(b.values[k] > 0.0);
    CHECK(b.values[k] <= 1.0);
  }
  CHECK_THROWS_AS(sample_sparse_signal(3, 4, rng), std::invalid_argument);
}

TEST_CASE("sparse support is uniform over indices") {
  RandomStream rng(12);
  const int d = 100, n = 10000;
  std::vector<int> counts(d, 0);
  for (int i = 0; i < n; ++i) ++counts[sample_sparse_signal(d, 1, rng).support[0]];
  for (int k = 0; k < d; ++k) {
    CHECK(std::abs(static_cast<double>(counts[k]) / n - 0.01) <= 0.005);
  }
}

TEST_CASE("noiseless one-bit responses are exact signs") {
  RandomStream rng(13);
  const SparseSignal signal = sample_sparse_signal(2, 1, rng);
  EllipticalDesign design{2, RadialLaw::unit_constant(), std::nullopt};
  const Dataset data = one_bit_generate(signal, design, std::nullopt, 64, rng);
  for (int i = 0; i < data.m(); ++i) {
    CHECK(std::abs(data.y[i]) == 1.0);
    const double inner = data.x.row(i).dot(signal.values);
    CHECK(data.y[i] == (inner > 0 ? 1.0 : -1.0));
  }
}

TEST_CASE("snr sets the heavy-tailed noise variance") {
  RandomStream rng_a(14), rng_b(14);
  const SparseSignal signal = sample_sparse_signal(8, 2, rng_a);
  sample_sparse_signal(8, 2, rng_b);  // keep the streams aligned
  EllipticalDesign design{8, RadialLaw::pareto_difference(2.1), std::nullopt};
  const int m = 100000;
  const Dataset clean = one_bit_generate(signal, design, std::nullopt, m, rng_a);
  const Dataset noisy = one_bit_generate(signal, design, 10.0, m, rng_b);
  CHECK(clean.x.cwiseEqual(noisy.x).all());  // same substream, same design draws
  const Eigen::VectorXd delta = noisy.y - clean.y;
  CHECK(std::abs(delta.mean()) <= 0.02);
  // delta = sigma h with sigma^2 = 10^(-10/10) = 0.1 and h the unit-variance
  // Pareto difference; the truncated second moment pins the noise scale.
  const double sigma = std::sqrt(0.1);
  const double cap = 5.0;
  double capped_sq = 0.0, capped_fourth = 0.0;
  for (int i = 0; i < m; ++i) {
    const double h = delta[i] / sigma;
    const double clipped = std::min(h * h, cap * cap);
    capped_sq += clipped;
    capped_fourth += clipped * clipped;
  }
  const double mc = capped_sq / m;
  const double se =
      std::sqrt((capped_fourth - capped_sq * capped_sq / m) / (m - 1) / m);
  const double exact = oracles::pareto_difference_truncated_second_moment(2.1, cap);
  CHECK(std::abs(mc - exact) <= 3.0 * se);
}

TEST_CASE("samplers are deterministic given the seed") {
  EllipticalDesign design{16, RadialLaw::pareto_difference(2.1), std::nullopt};
  RandomStream a(99), b(99);
  CHECK(sample_design(design, 20, a).cwiseEqual(sample_design(design, 20, b)).all());
  RandomStream c(99), d(99);
  const SparseSignal sa = sample_sparse_signal(32, 4, c);
  const SparseSignal sb = sample_sparse_signal(32, 4, d);
  CHECK(sa.values.cwiseEqual(sb.values).all());
  CHECK(sa.support == sb.support);
}

TEST_SUITE_END();
