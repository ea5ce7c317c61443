#include "robrec/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace robrec {

SetDescriptor SetDescriptor::l1_ball(int d, double radius) {
  if (d < 1 || !(radius > 0.0)) {
    throw std::invalid_argument("SetDescriptor: l1 ball needs d >= 1 and radius > 0");
  }
  SetDescriptor s;
  s.kind = Kind::L1Ball;
  s.dim = d;
  s.radius = radius;
  return s;
}

SetDescriptor SetDescriptor::l2_ball(int d, double radius) {
  if (d < 1 || !(radius > 0.0)) {
    throw std::invalid_argument("SetDescriptor: l2 ball needs d >= 1 and radius > 0");
  }
  SetDescriptor s;
  s.kind = Kind::L2Ball;
  s.dim = d;
  s.radius = radius;
  return s;
}

SetDescriptor SetDescriptor::nuclear_ball(int d1, int d2, double radius) {
  if (d1 < 1 || d2 < 1 || !(radius > 0.0)) {
    throw std::invalid_argument("SetDescriptor: nuclear ball needs d1, d2 >= 1 and radius > 0");
  }
  SetDescriptor s;
  s.kind = Kind::NuclearBall;
  s.dim = d1 * d2;
  s.rows = d1;
  s.cols = d2;
  s.radius = radius;
  return s;
}

SetDescriptor SetDescriptor::singleton(int d) {
  SetDescriptor s;
  s.kind = Kind::Singleton;
  s.dim = d;
  return s;
}

WidthEstimate mean_width_mc(const SetDescriptor& set, int n_samples, RandomStream& rng) {
  if (n_samples < 1) {
    throw std::invalid_argument("mean_width_mc: need at least one sample");
  }
  WidthEstimate est;
  est.n_samples = n_samples;
  if (set.kind == SetDescriptor::Kind::Singleton) {
    return est;  // sup over a single translate of the origin is identically 0
  }
  if (set.dim < 1) {
    throw std::invalid_argument("mean_width_mc: invalid descriptor");
  }
  double sum = 0.0, sum_sq = 0.0;
  Eigen::VectorXd g(set.dim);
  for (int it = 0; it < n_samples; ++it) {
    for (int k = 0; k < set.dim; ++k) g[k] = rng.normal();
    double sup = 0.0;
    switch (set.kind) {
      case SetDescriptor::Kind::L1Ball:
        sup = set.radius * g.lpNorm<Eigen::Infinity>();
        break;
      case SetDescriptor::Kind::L2Ball:
        sup = set.radius * g.norm();
        break;
      case SetDescriptor::Kind::NuclearBall: {
        Eigen::Map<const Eigen::MatrixXd> mat(g.data(), set.rows, set.cols);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
        sup = set.radius * svd.singularValues()[0];
        break;
      }
      case SetDescriptor::Kind::Singleton:
        break;
    }
    sum += sup;
    sum_sq += sup * sup;
  }
  est.value = sum / n_samples;
  if (n_samples > 1) {
    const double var = (sum_sq - sum * sum / n_samples) / (n_samples - 1);
    est.std_error = std::sqrt(std::max(var, 0.0) / n_samples);
  }
  return est;
}

double sparse_cone_width_bound(double s, double d) {
  if (!(s >= 1.0 && s <= d)) {
    throw std::invalid_argument("sparse_cone_width_bound: need 1 <= s <= d");
  }
  return std::sqrt(2.0 * s * std::log(d / s) + 1.25 * s);
}

double lowrank_cone_width_bound(double r, double d1, double d2) {
  if (!(r >= 1.0 && d1 >= 1.0 && d2 >= 1.0 && r <= std::min(d1, d2))) {
    throw std::invalid_argument("lowrank_cone_width_bound: need 1 <= r <= min(d1, d2)");
  }
  return std::sqrt(3.0 * r * (d1 + d2 - r));
}

ConeBound ConeBound::sparse(double s, double d, double c0) {
  ConeBound cone;
  cone.kind = Kind::SparseDescent;
  cone.s = s;
  cone.d = d;
  cone.c0 = c0;
  cone.width_bound = sparse_cone_width_bound(s, d);
  cone.compat_bound = restricted_compat_bound(cone);
  return cone;
}

ConeBound ConeBound::low_rank(double r, double d1, double d2, double c0) {
  ConeBound cone;
  cone.kind = Kind::LowRankDescent;
  cone.r = r;
  cone.d1 = d1;
  cone.d2 = d2;
  cone.c0 = c0;
  cone.width_bound = lowrank_cone_width_bound(r, d1, d2);
  cone.compat_bound = restricted_compat_bound(cone);
  return cone;
}

double restricted_compat_bound(const ConeBound& cone) {
  if (!(cone.c0 > 1.0)) {
    throw std::invalid_argument("restricted_compat_bound: c0 must exceed 1");
  }
  const double factor = 2.0 * cone.c0 / (cone.c0 - 1.0);
  if (cone.kind == ConeBound::Kind::SparseDescent) {
    return factor * std::sqrt(cone.s);
  }
  return factor * std::sqrt(2.0 * cone.r);
}

double theoretical_error_rate(const ConeBound& cone, int m) {
  if (m < 1) {
    throw std::invalid_argument("theoretical_error_rate: m must be positive");
  }
  if (cone.kind == ConeBound::Kind::SparseDescent) {
    return std::sqrt(cone.s * std::log(cone.d / cone.s) / m);
  }
  return std::sqrt(cone.r * (cone.d1 + cone.d2) / m);
}

WidthEstimate eta_oracle(LinkKind link, const EllipticalDesign& design,
                         const Eigen::VectorXd& theta, int n_mc, RandomStream& rng) {
  if (n_mc < 1) {
    throw std::invalid_argument("eta_oracle: need at least one sample");
  }
  if (theta.size() != design.dim) {
    throw std::invalid_argument("eta_oracle: theta does not match design dimension");
  }
  double sum = 0.0, sum_sq = 0.0;
  for (int it = 0; it < n_mc; ++it) {
    const Eigen::MatrixXd x = sample_design(design, 1, rng);
    const double inner = x.row(0).dot(theta);
    double y = 0.0;
    switch (link) {
      case LinkKind::Sign:
        y = inner > 0.0 ? 1.0 : (inner < 0.0 ? -1.0 : 0.0);
        break;
      case LinkKind::Identity:
        y = inner;
        break;
      case LinkKind::Zero:
        y = 0.0;
        break;
    }
    const double term = y * inner;  // <y x, theta>
    sum += term;
    sum_sq += term * term;
  }
  WidthEstimate est;
  est.n_samples = n_mc;
  est.value = sum / n_mc;
  if (n_mc > 1) {
    const double var = (sum_sq - sum * sum / n_mc) / (n_mc - 1);
    est.std_error = std::sqrt(std::max(var, 0.0) / n_mc);
  }
  return est;
}

}  // namespace robrec
