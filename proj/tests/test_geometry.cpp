#include <cmath>

#include "doctest.h"
#include "hoco/geometry.hpp"
#include "hoco/rng.hpp"

using namespace hoco;

namespace {
Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}
}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("projection onto the unit ball rescales (3,4) to (0.6,0.8)") {
  const BallDomain ball(Eigen::VectorXd::Zero(2), 1.0);
  const Eigen::VectorXd y = ball.project(vec2(3.0, 4.0));
  CHECK(std::abs(y[0] - 0.6) <= 1e-12);
  CHECK(std::abs(y[1] - 0.8) <= 1e-12);
}

TEST_CASE("projection respects an off-center ball") {
  const BallDomain ball(vec2(1.0, 0.0), 2.0);
  const Eigen::VectorXd y = ball.project(vec2(4.0, 0.0));
  CHECK(std::abs(y[0] - 3.0) <= 1e-12);
  CHECK(std::abs(y[1]) <= 1e-12);
  // interior points pass through untouched
  const Eigen::VectorXd inside = vec2(1.5, 0.5);
  CHECK((ball.project(inside) - inside).norm() == 0.0);
}

TEST_CASE("projection is idempotent at the bit level") {
  Rng rng(11);
  const int d = 5;
  for (int trial = 0; trial < 2000; ++trial) {
    const Eigen::VectorXd center = rng.normal_vector(d);
    const double radius = 0.1 + 3.0 * rng.uniform();
    const BallDomain ball(center, radius);
    const Eigen::VectorXd x = center + rng.normal_vector(d) * (radius * 5.0 * rng.uniform());
    const Eigen::VectorXd p1 = ball.project(x);
    CHECK(ball.contains(p1));
    const Eigen::VectorXd p2 = ball.project(p1);
    for (int i = 0; i < d; ++i) CHECK(p1[i] == p2[i]);
  }
}

TEST_CASE("projection is nonexpansive and optimal") {
  Rng rng(12);
  const int d = 4;
  const BallDomain ball(rng.normal_vector(d), 1.7);
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::VectorXd a = ball.center() + 4.0 * rng.normal_vector(d);
    const Eigen::VectorXd b = ball.center() + 4.0 * rng.normal_vector(d);
    CHECK((ball.project(a) - ball.project(b)).norm() <= (a - b).norm() + 1e-12);
    // <x - proj(x), z - proj(x)> <= 0 for all feasible z
    const Eigen::VectorXd px = ball.project(a);
    const Eigen::VectorXd z = ball.sample_uniform(rng);
    CHECK((a - px).dot(z - px) <= 1e-12);
  }
}

TEST_CASE("uniform ball samples are feasible with mean norm d/(d+1)") {
  Rng rng(13);
  for (int d : {2, 6}) {
    const BallDomain ball(Eigen::VectorXd::Zero(d), 1.0);
    const int n = 50000;
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd x = ball.sample_uniform(rng);
      CHECK(ball.contains(x));
      mean += x.norm();
    }
    mean /= n;
    const double target = static_cast<double>(d) / (d + 1.0);
    CHECK(std::abs(mean - target) < 0.01);
  }
}

TEST_CASE("radius zero collapses to the center") {
  const BallDomain point(vec2(2.0, -1.0), 0.0);
  Rng rng(14);
  CHECK((point.sample_uniform(rng) - vec2(2.0, -1.0)).norm() == 0.0);
  CHECK((point.project(vec2(5.0, 5.0)) - vec2(2.0, -1.0)).norm() == 0.0);
}

TEST_CASE("bad inputs are rejected") {
  CHECK_THROWS_AS(BallDomain(Eigen::VectorXd::Zero(2), -1.0), std::invalid_argument);
  const BallDomain ball(Eigen::VectorXd::Zero(2), 1.0);
  CHECK_THROWS_AS(ball.project(Eigen::VectorXd::Zero(3)), std::invalid_argument);
  Eigen::VectorXd nanv = vec2(0.0, std::nan(""));
  CHECK_THROWS_AS(ball.project(nanv), std::invalid_argument);
}

}  // TEST_SUITE
