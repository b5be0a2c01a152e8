#pragma once

#include <Eigen/Core>

#include "hoco/rng.hpp"

namespace hoco {

// Closed Euclidean ball { x : ||x - center|| <= radius }. The only feasible
// set in this library; radius 0 is allowed (the singleton {center}).
class BallDomain {
 public:
  BallDomain(Eigen::VectorXd center, double radius);

  int dim() const { return static_cast<int>(center_.size()); }
  double radius() const { return radius_; }
  double diameter() const { return 2.0 * radius_; }
  const Eigen::VectorXd& center() const { return center_; }

  bool contains(const Eigen::VectorXd& x) const;

  // Euclidean projection. Idempotent at the bit level: the returned point
  // satisfies contains(), so projecting it again returns it unchanged.
  Eigen::VectorXd project(const Eigen::VectorXd& x) const;

  // Uniform draw: center + radius * U^{1/d} * (uniform sphere direction).
  Eigen::VectorXd sample_uniform(Rng& rng) const;

 private:
  Eigen::VectorXd center_;
  double radius_;
};

}  // namespace hoco
