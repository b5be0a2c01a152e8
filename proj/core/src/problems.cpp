#include "hoco/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace hoco {

namespace {
void check_dim(const Objective& f, const Eigen::VectorXd& x) {
  if (x.size() != f.d) throw std::invalid_argument("Objective: dimension mismatch");
}
}  // namespace

Objective Objective::abs_distance(double G, Eigen::VectorXd x_star) {
  if (!(G > 0.0)) throw std::invalid_argument("abs_distance: G must be positive");
  return Objective{ObjectiveKind::AbsDistance, static_cast<int>(x_star.size()), G, 0, 1, 0, std::move(x_star)};
}

Objective Objective::quadratic(double H, Eigen::VectorXd x_star) {
  if (!(H > 0.0)) throw std::invalid_argument("quadratic: H must be positive");
  return Objective{ObjectiveKind::Quadratic, static_cast<int>(x_star.size()), 0, H, 1, 0, std::move(x_star)};
}

Objective Objective::holder_power(double H, double nu, Eigen::VectorXd x_star) {
  if (!(H > 0.0)) throw std::invalid_argument("holder_power: H must be positive");
  if (!(nu > 0.0) || !(nu <= 1.0)) throw std::invalid_argument("holder_power: nu must lie in (0,1]");
  return Objective{ObjectiveKind::HolderPower, static_cast<int>(x_star.size()), 0, H, nu, 0, std::move(x_star)};
}

Objective Objective::strong_quadratic(double mu, Eigen::VectorXd x_star) {
  if (!(mu > 0.0)) throw std::invalid_argument("strong_quadratic: mu must be positive");
  return Objective{ObjectiveKind::StrongQuadratic, static_cast<int>(x_star.size()), 0, 0, 1, mu, std::move(x_star)};
}

Objective Objective::saturated_abs(int d) {
  if (d <= 0) throw std::invalid_argument("saturated_abs: d must be positive");
  return Objective{ObjectiveKind::SaturatedAbs, d, 0, 0, 1, 0, Eigen::VectorXd::Zero(d)};
}

double value(const Objective& f, const Eigen::VectorXd& x) {
  check_dim(f, x);
  switch (f.kind) {
    case ObjectiveKind::AbsDistance:
      return f.G * (x - f.x_star).norm();
    case ObjectiveKind::Quadratic:
      return 0.5 * f.H * (x - f.x_star).squaredNorm();
    case ObjectiveKind::HolderPower:
      return f.H / (1.0 + f.nu) * std::pow((x - f.x_star).norm(), 1.0 + f.nu);
    case ObjectiveKind::StrongQuadratic:
      return 0.5 * f.mu * (x - f.x_star).squaredNorm();
    case ObjectiveKind::SaturatedAbs: {
      double s = 0.0;
      for (int i = 0; i < f.d; ++i) s += std::min(std::abs(x[i]), 1.0);
      return s;
    }
  }
  throw std::logic_error("value: unknown kind");
}

Eigen::VectorXd gradient(const Objective& f, const Eigen::VectorXd& x) {
  check_dim(f, x);
  switch (f.kind) {
    case ObjectiveKind::AbsDistance: {
      const Eigen::VectorXd delta = x - f.x_star;
      const double r = delta.norm();
      if (r == 0.0) return Eigen::VectorXd::Zero(f.d);
      return (f.G / r) * delta;
    }
    case ObjectiveKind::Quadratic:
      return f.H * (x - f.x_star);
    case ObjectiveKind::HolderPower: {
      const Eigen::VectorXd delta = x - f.x_star;
      const double r = delta.norm();
      if (r == 0.0) return Eigen::VectorXd::Zero(f.d);
      return f.H * std::pow(r, f.nu - 1.0) * delta;
    }
    case ObjectiveKind::StrongQuadratic:
      return f.mu * (x - f.x_star);
    case ObjectiveKind::SaturatedAbs: {
      Eigen::VectorXd g = Eigen::VectorXd::Zero(f.d);
      for (int i = 0; i < f.d; ++i) {
        const double a = std::abs(x[i]);
        if (a > 0.0 && a < 1.0) g[i] = x[i] > 0.0 ? 1.0 : -1.0;
        // kinks at |x_i| = 0 and |x_i| = 1 take the zero element
      }
      return g;
    }
  }
  throw std::logic_error("gradient: unknown kind");
}

GradSample noisy_gradient(const Objective& f, const Eigen::VectorXd& x,
                          const NoiseModel& noise, Rng& rng) {
  GradSample s;
  s.true_grad = gradient(f, x);
  s.noise = sample_noise(noise, f.d, rng);
  s.g = s.true_grad + s.noise;
  return s;
}

LinearAdversary LinearAdversary::iid(double G, int d) {
  if (!(G > 0.0) || d <= 0) throw std::invalid_argument("LinearAdversary: need G > 0, d > 0");
  return LinearAdversary(G, d, false);
}

LinearAdversary LinearAdversary::drifting(double G, int d, double angle_per_round, Rng& rng) {
  if (!(G > 0.0) || d < 2) throw std::invalid_argument("LinearAdversary: drift needs G > 0, d >= 2");
  LinearAdversary a(G, d, true);
  a.step_ = angle_per_round;
  a.u_ = rng.sphere_vector(d);
  // orthonormalize a second random direction against u
  for (;;) {
    Eigen::VectorXd w = rng.sphere_vector(d);
    Eigen::VectorXd v = w - w.dot(a.u_) * a.u_;
    const double n = v.norm();
    if (n > 1e-8) { a.v_ = v / n; break; }
  }
  return a;
}

Eigen::VectorXd LinearAdversary::next(Rng& rng) {
  if (!drift_) return G_ * rng.sphere_vector(d_);
  const Eigen::VectorXd w = G_ * (std::cos(angle_) * u_ + std::sin(angle_) * v_);
  angle_ += step_;
  return w;
}

Eigen::VectorXd best_linear_comparator(const Eigen::VectorXd& w_sum, const BallDomain& domain) {
  const double n = w_sum.norm();
  if (n == 0.0) return domain.center();
  return domain.center() - (domain.radius() / n) * w_sum;
}

Eigen::VectorXd best_fixed_comparator(const Objective& f, const BallDomain& domain) {
  return domain.project(f.x_star);
}

}  // namespace hoco
