#include "hoco/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace hoco {

BallDomain::BallDomain(Eigen::VectorXd center, double radius)
    : center_(std::move(center)), radius_(radius) {
  if (center_.size() == 0) throw std::invalid_argument("BallDomain: empty center");
  if (!(radius_ >= 0.0) || !std::isfinite(radius_))
    throw std::invalid_argument("BallDomain: radius must be finite and >= 0");
}

bool BallDomain::contains(const Eigen::VectorXd& x) const {
  if (x.size() != center_.size()) throw std::invalid_argument("BallDomain: dimension mismatch");
  return (x - center_).norm() <= radius_;
}

Eigen::VectorXd BallDomain::project(const Eigen::VectorXd& x) const {
  if (x.size() != center_.size()) throw std::invalid_argument("BallDomain: dimension mismatch");
  if (!x.allFinite()) throw std::invalid_argument("BallDomain: project of non-finite point");
  const Eigen::VectorXd delta = x - center_;
  const double nrm = delta.norm();
  if (nrm <= radius_) return x;
  // Rescale onto the boundary. The naive scale can overshoot by an ulp under
  // round-to-nearest, which would break project(project(x)) == project(x)
  // bitwise, so nudge the factor down until the membership test passes.
  double s = radius_ / nrm;
  Eigen::VectorXd y = center_ + s * delta;
  while ((y - center_).norm() > radius_) {
    s = std::nextafter(s, 0.0);
    y = center_ + s * delta;
  }
  return y;
}

Eigen::VectorXd BallDomain::sample_uniform(Rng& rng) const {
  if (radius_ == 0.0) return center_;
  const Eigen::VectorXd dir = rng.sphere_vector(dim());
  const double r = radius_ * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim()));
  return center_ + r * dir;
}

}  // namespace hoco
