#pragma once

#include <Eigen/Core>

#include "hoco/geometry.hpp"
#include "hoco/noise.hpp"
#include "hoco/rng.hpp"

namespace hoco {

// Fixed objectives F(x). The online stream for these is the same F each
// round, observed through noisy gradients. The linear family is different:
// its loss changes per round and lives in LinearAdversary below.
enum class ObjectiveKind {
  AbsDistance,       // G * ||x - x*||             (sharp, nonsmooth at x*)
  Quadratic,         // (H/2) * ||x - x*||^2       (H-smooth)
  HolderPower,       // (H/(1+nu)) * ||x - x*||^{1+nu}, nu in (0,1]
  StrongQuadratic,   // (mu/2) * ||x - x*||^2      (mu-strongly convex)
  SaturatedAbs,      // sum_i min(|x_i|, 1)        (nonconvex, flat far field)
};

struct Objective {
  ObjectiveKind kind;
  int d = 0;
  double G = 0.0, H = 0.0, nu = 1.0, mu = 0.0;
  Eigen::VectorXd x_star;  // minimizer for the distance-based families; zeros for SaturatedAbs

  static Objective abs_distance(double G, Eigen::VectorXd x_star);
  static Objective quadratic(double H, Eigen::VectorXd x_star);
  static Objective holder_power(double H, double nu, Eigen::VectorXd x_star);
  static Objective strong_quadratic(double mu, Eigen::VectorXd x_star);
  static Objective saturated_abs(int d);
};

double value(const Objective& f, const Eigen::VectorXd& x);

// Subgradient; at kinks we return the minimal-norm element (zero).
Eigen::VectorXd gradient(const Objective& f, const Eigen::VectorXd& x);

struct GradSample {
  Eigen::VectorXd g;          // true_grad + noise, what the learner sees
  Eigen::VectorXd true_grad;
  Eigen::VectorXd noise;
};

GradSample noisy_gradient(const Objective& f, const Eigen::VectorXd& x,
                          const NoiseModel& noise, Rng& rng);

// Round-varying linear losses <w_t, x> with ||w_t|| = G. iid mode draws w_t
// uniform on the G-sphere; drift mode rotates w_t by a fixed small angle per
// round inside a random 2-plane chosen at construction.
class LinearAdversary {
 public:
  static LinearAdversary iid(double G, int d);
  static LinearAdversary drifting(double G, int d, double angle_per_round, Rng& rng);

  // w_t for the next round (iid consumes draws; drift is deterministic after setup)
  Eigen::VectorXd next(Rng& rng);

  double G() const { return G_; }
  int dim() const { return d_; }

 private:
  LinearAdversary(double G, int d, bool drift) : G_(G), d_(d), drift_(drift) {}
  double G_;
  int d_;
  bool drift_;
  Eigen::VectorXd u_, v_;  // drift plane basis
  double angle_ = 0.0, step_ = 0.0;
};

// argmin over the ball of <w_sum, x>: the best fixed point in hindsight for
// a finished linear stream. Zero w_sum returns the center.
Eigen::VectorXd best_linear_comparator(const Eigen::VectorXd& w_sum, const BallDomain& domain);

// Minimizer of a fixed objective over the ball: project(x_star).
Eigen::VectorXd best_fixed_comparator(const Objective& f, const BallDomain& domain);

}  // namespace hoco
