#include <cmath>

#include "doctest.h"
#include "hoco/problems.hpp"

using namespace hoco;

namespace {
Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}
Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}
}  // namespace

TEST_SUITE("problems") {

TEST_CASE("values match worked instances") {
  CHECK(value(Objective::quadratic(2.0, Eigen::VectorXd::Zero(2)), vec2(1.0, 1.0)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(value(Objective::saturated_abs(2), vec2(0.5, -2.0)) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(value(Objective::abs_distance(2.0, Eigen::VectorXd::Zero(2)), vec2(0.0, 3.0)) ==
        doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("gradients match worked instances") {
  const Eigen::VectorXd g1 = gradient(Objective::abs_distance(2.0, Eigen::VectorXd::Zero(2)), vec2(0.0, 3.0));
  CHECK(std::abs(g1[0]) <= 1e-15);
  CHECK(std::abs(g1[1] - 2.0) <= 1e-12);

  const Eigen::VectorXd g2 = gradient(Objective::holder_power(1.0, 0.5, Eigen::VectorXd::Zero(2)), vec2(4.0, 0.0));
  CHECK(std::abs(g2[0] - 2.0) <= 1e-12);
  CHECK(std::abs(g2[1]) <= 1e-15);

  const Eigen::VectorXd g3 = gradient(Objective::saturated_abs(3), vec3(0.5, -2.0, 0.0));
  CHECK(g3[0] == 1.0);
  CHECK(g3[1] == 0.0);  // saturated coordinate
  CHECK(g3[2] == 0.0);  // kink takes the zero element
  // the other kink, |x_i| = 1, also returns zero
  CHECK(gradient(Objective::saturated_abs(1), Eigen::VectorXd::Ones(1))[0] == 0.0);

  // minimal-norm subgradient at the minimizer
  CHECK(gradient(Objective::abs_distance(2.0, vec2(1.0, 1.0)), vec2(1.0, 1.0)).norm() == 0.0);
}

TEST_CASE("convex families satisfy the subgradient inequality") {
  Rng rng(31);
  const int d = 4;
  const Eigen::VectorXd xstar = rng.normal_vector(d) * 0.3;
  const Objective fams[] = {
      Objective::abs_distance(1.7, xstar),
      Objective::quadratic(2.2, xstar),
      Objective::holder_power(1.1, 0.5, xstar),
      Objective::strong_quadratic(0.8, xstar),
  };
  for (const auto& f : fams) {
    for (int trial = 0; trial < 300; ++trial) {
      const Eigen::VectorXd x = rng.normal_vector(d);
      const Eigen::VectorXd y = rng.normal_vector(d);
      const double lhs = value(f, y);
      const double rhs = value(f, x) + gradient(f, x).dot(y - x);
      CHECK(lhs >= rhs - 1e-9);
    }
  }
}

TEST_CASE("value change equals the integrated gradient along segments") {
  Rng rng(32);
  const int d = 3;
  const Eigen::VectorXd xstar = rng.normal_vector(d) * 0.2;
  const Objective fams[] = {
      Objective::abs_distance(1.0, xstar),  Objective::quadratic(1.5, xstar),
      Objective::holder_power(2.0, 0.7, xstar), Objective::strong_quadratic(1.0, xstar),
      Objective::saturated_abs(d),
  };
  for (const auto& f : fams) {
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXd a = rng.normal_vector(d);
      const Eigen::VectorXd b = rng.normal_vector(d);
      const int n = 60000;  // kinked families converge at O(1/n) locally
      double integral = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        const double s = static_cast<double>(i) / n;
        integral += w * gradient(f, a + s * (b - a)).dot(b - a);
      }
      integral /= n;
      CHECK(std::abs(integral - (value(f, b) - value(f, a))) <= 1e-4);
    }
  }
}

TEST_CASE("noisy gradients decompose exactly") {
  Rng rng(33);
  const Objective f = Objective::quadratic(1.0, Eigen::VectorXd::Zero(3));
  const NoiseModel m = NoiseModel::pareto_radial(TailSpec(1.5, 1.0));
  const Eigen::VectorXd x = rng.normal_vector(3);
  const GradSample s = noisy_gradient(f, x, m, rng);
  CHECK((s.g - s.true_grad - s.noise).norm() <= 1e-14);
  CHECK((s.true_grad - gradient(f, x)).norm() == 0.0);
}

TEST_CASE("linear streams keep exact magnitude G") {
  Rng rng(34);
  LinearAdversary iid = LinearAdversary::iid(2.5, 4);
  for (int t = 0; t < 200; ++t) CHECK(std::abs(iid.next(rng).norm() - 2.5) <= 1e-12);

  LinearAdversary drift = LinearAdversary::drifting(1.5, 4, 0.02, rng);
  Eigen::VectorXd prev = drift.next(rng);
  double total_angle = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXd w = drift.next(rng);
    CHECK(std::abs(w.norm() - 1.5) <= 1e-12);
    const double cosang = prev.dot(w) / (prev.norm() * w.norm());
    total_angle += std::acos(std::min(1.0, std::max(-1.0, cosang)));
    prev = w;
  }
  CHECK(std::abs(total_angle - 100 * 0.02) <= 1e-6);  // steady rotation
  CHECK_THROWS_AS(LinearAdversary::drifting(1.0, 1, 0.01, rng), std::invalid_argument);
}

TEST_CASE("hindsight comparators") {
  const BallDomain ball(Eigen::VectorXd::Zero(2), 1.0);
  const Eigen::VectorXd best = best_linear_comparator(vec2(3.0, 4.0), ball);
  CHECK(std::abs(best[0] + 0.6) <= 1e-12);
  CHECK(std::abs(best[1] + 0.8) <= 1e-12);
  CHECK((best_linear_comparator(Eigen::VectorXd::Zero(2), ball) - ball.center()).norm() == 0.0);
  // fixed families project the minimizer
  const Objective f = Objective::quadratic(1.0, vec2(5.0, 0.0));
  CHECK(std::abs(best_fixed_comparator(f, ball)[0] - 1.0) <= 1e-12);
}

}  // TEST_SUITE
