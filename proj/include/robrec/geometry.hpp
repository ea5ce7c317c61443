#pragma once

#include <Eigen/Dense>

#include "robrec/distributions.hpp"
#include "robrec/rng.hpp"

namespace robrec {

/// Set whose Gaussian mean width E sup_{t in T} <g, t> is estimated by Monte
/// Carlo; the supremum has a closed form for every variant.
struct SetDescriptor {
  enum class Kind { L1Ball, L2Ball, NuclearBall, Singleton };

  Kind kind = Kind::Singleton;
  double radius = 1.0;
  int dim = 0;       // ambient dimension (d1 * d2 for nuclear balls)
  int rows = 0, cols = 0;  // nuclear balls only

  static SetDescriptor l1_ball(int d, double radius);
  static SetDescriptor l2_ball(int d, double radius);
  static SetDescriptor nuclear_ball(int d1, int d2, double radius);
  static SetDescriptor singleton(int d);
};

struct WidthEstimate {
  double value = 0.0;
  double std_error = 0.0;
  int n_samples = 0;
};

/// Closed-form width and compatibility bounds for the descent cones of sparse
/// vectors (l1 ball constraint) and low-rank matrices (nuclear ball).
struct ConeBound {
  enum class Kind { SparseDescent, LowRankDescent };

  Kind kind = Kind::SparseDescent;
  double s = 0;        // sparsity (SparseDescent)
  double d = 0;        // ambient dimension (SparseDescent)
  double r = 0;        // rank (LowRankDescent)
  double d1 = 0, d2 = 0;
  double c0 = 2.0;     // restricted-set constant, > 1
  double width_bound = 0.0;   // sqrt of the squared-width bound
  double compat_bound = 0.0;

  static ConeBound sparse(double s, double d, double c0 = 2.0);
  static ConeBound low_rank(double r, double d1, double d2, double c0 = 2.0);
};

WidthEstimate mean_width_mc(const SetDescriptor& set, int n_samples, RandomStream& rng);

/// sqrt(2 s log(d/s) + 1.25 s), the sparse descent-cone width bound.
double sparse_cone_width_bound(double s, double d);

/// sqrt(3 r (d1 + d2 - r)), the low-rank descent-cone width bound.
double lowrank_cone_width_bound(double r, double d1, double d2);

/// Restricted-compatibility bound: (2 c0/(c0-1)) sqrt(s) for the l1 norm,
/// (2 sqrt(2) c0/(c0-1)) sqrt(r) for the nuclear norm.
double restricted_compat_bound(const ConeBound& cone);

/// Error-rate scale from the recovery guarantees: sqrt(s log(d/s) / m) for
/// sparse cones, sqrt(r (d1 + d2) / m) for low-rank ones. No absolute constant
/// is implied; callers use ratios only.
double theoretical_error_rate(const ConeBound& cone, int m);

/// Response models for the index-constant oracle below.
enum class LinkKind { Sign, Identity, Zero };

/// Monte-Carlo estimate of eta = E <y x, theta>, the scale at which the signal
/// direction is recoverable. Callers supply theta with |Sigma^{1/2} theta| = 1.
WidthEstimate eta_oracle(LinkKind link, const EllipticalDesign& design,
                         const Eigen::VectorXd& theta, int n_mc, RandomStream& rng);

}  // namespace robrec
