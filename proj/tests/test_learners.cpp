#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "hoco/learners.hpp"
#include "hoco/rng.hpp"

using namespace hoco;

namespace {
Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}
BallDomain ball(int d, double r) { return BallDomain(Eigen::VectorXd::Zero(d), r); }
}  // namespace

TEST_SUITE("learners") {

TEST_CASE("stepsize rules hit worked values") {
  CHECK(stepsize(Schedule::ogd_convex(2.0, 1.0, 0.5, 1.5), 16) == 0.5);  // G branch binds
  // with sigma = 0 only the G branch exists
  CHECK(stepsize(Schedule::ogd_convex(2.0, 1.0, 0.0, 1.5), 9) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  // with G = 0 only the tail branch exists
  CHECK(stepsize(Schedule::ogd_convex(2.0, 0.0, 1.0, 2.0), 4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(stepsize(Schedule::ogd_convex(2.0, 0.0, 0.0, 2.0), 7) == kInf);

  CHECK(stepsize(Schedule::ogd_strong(2.0), 5) == 0.1);

  // smooth rule: min(1/(4H), gamma D, tail) with no tail here
  CHECK(stepsize(Schedule::smooth_fixed(1.0, 1.0, 1.0, 0.0, 2.0), 123) == 0.25);
  CHECK(stepsize(Schedule::smooth_fixed(0.1, 0.05, 1.0, 0.0, 2.0), 1) == doctest::Approx(0.05).epsilon(1e-15));

  CHECK(stepsize(Schedule::adagrad_scale(std::sqrt(2.0)), 3, 25.0) == std::sqrt(2.0) / 5.0);
  CHECK(stepsize(Schedule::adagrad_scale(1.0), 1, 0.0) == kInf);
  CHECK(stepsize(Schedule::da_adaptive_scale(1.0), 2, 4.0) == 1.0);

  const Schedule capped = Schedule::oada_rule_capped(10.0, 1.0, 0.5, 4.0);
  CHECK(gamma_cap(capped, 4.0) == 0.25);
  CHECK(gamma_cap(capped, 0.0) == kInf);
  CHECK(gamma_cap(Schedule::oada_rule(1.0), 100.0) == kInf);
  CHECK(stepsize(capped, 1, 1.0, 4.0) == 0.25);  // cap binds below eta/sqrt(V) = 10

  CHECK_THROWS_AS(stepsize(Schedule::ogd_strong(1.0), 0), std::invalid_argument);
}

TEST_CASE("schedule factories validate") {
  CHECK_THROWS_AS(Schedule::ogd_convex(0.0, 1.0, 1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::ogd_convex(1.0, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::ogd_convex(1.0, 1.0, 1.0, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::ogd_strong(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::smooth_fixed(0.0, 1.0, 1.0, 0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::adagrad_scale(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::oada_rule_capped(1.0, 1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("first adagrad step on a known gradient") {
  AdaGradState s{Eigen::VectorXd::Zero(2), 0.0};
  const double eta = adagrad_step(s, ball(2, 2.0), vec2(3.0, 4.0), std::sqrt(2.0));
  CHECK(eta == std::sqrt(2.0) / 5.0);
  CHECK(s.V == 25.0);
  // step lands strictly inside, no clipping: norm sqrt(2) < 2
  CHECK(std::abs(s.x[0] + 3.0 * std::sqrt(2.0) / 5.0) <= 1e-15);
  CHECK(std::abs(s.x[1] + 4.0 * std::sqrt(2.0) / 5.0) <= 1e-15);

  // zero gradients keep the state parked
  AdaGradState z{Eigen::VectorXd::Zero(2), 0.0};
  CHECK(adagrad_step(z, ball(2, 1.0), Eigen::VectorXd::Zero(2), 1.0) == kInf);
  CHECK(z.x.norm() == 0.0);
}

TEST_CASE("first adaptive dual averaging step") {
  DaAdaptiveState s;
  s.x1 = Eigen::VectorXd::Zero(2);
  s.x = s.x1;
  s.grad_sum = Eigen::VectorXd::Zero(2);
  const double eta = da_adaptive_step(s, ball(2, 3.0), vec2(2.0, 0.0), 1.0);
  CHECK(eta == 1.0);  // 2 * 1 / sqrt(4)
  CHECK(std::abs(s.x[0] + 2.0) <= 1e-15);
  CHECK(s.x[1] == 0.0);
}

TEST_CASE("restarting learner resets at chunk boundaries") {
  OnlineLearner lrn = OnlineLearner::make_restarting(0.5, 2, 2);
  lrn.step(vec2(1.0, 0.0));
  CHECK(lrn.V() == 1.0);
  // round 2 closes the chunk: iterate snaps to -D g / ||g||
  lrn.step(vec2(0.0, -3.0));
  CHECK(std::abs(lrn.iterate()[0]) <= 1e-15);
  CHECK(std::abs(lrn.iterate()[1] - 0.5) <= 1e-12);
  // round 3 opens a fresh chunk: the accumulator restarts from this round's jump
  lrn.step(vec2(0.0, -3.0));
  CHECK(lrn.V() == 0.0);  // same gradient as the carried g_prev
  CHECK(std::abs(lrn.iterate()[1] - 0.5) <= 1e-12);  // argmin limit points the same way

  // chunk = 1 never resets: n mod 1 is always 0
  OnlineLearner one = OnlineLearner::make_restarting(1.0, 1, 1);
  Eigen::VectorXd g1(1);
  g1 << 1.0;
  one.step(g1);
  one.step(g1);
  CHECK(one.V() == 1.0);  // second increment is ||g - g||^2 = 0, no reset either
}

TEST_CASE("iterates stay feasible under violent gradients") {
  Rng rng(71);
  OnlineLearner lrn = OnlineLearner::make_restarting(0.25, 3, 4);
  for (int t = 0; t < 40; ++t) {
    lrn.step(rng.normal_vector(3) * 50.0);
    CHECK(lrn.iterate().norm() <= 0.25 + 1e-12);
  }
  OnlineLearner og(Algo::OGD, Schedule::ogd_convex(2.0, 1.0, 0.0, 2.0), ball(3, 1.0),
                   Eigen::VectorXd::Zero(3));
  for (int t = 0; t < 40; ++t) {
    og.step(rng.normal_vector(3) * 50.0);
    CHECK(og.domain().contains(og.iterate()));
  }
}

TEST_CASE("dual averaging equals gradient descent at constant stepsize, unconstrained") {
  const Schedule sched = Schedule::smooth_fixed(1.0, 1.0, 1.0, 0.0, 2.0);  // eta = 0.25 always
  const BallDomain dom = ball(3, 1e9);
  OnlineLearner a(Algo::OGD, sched, dom, Eigen::VectorXd::Zero(3));
  OnlineLearner b(Algo::DA, sched, dom, Eigen::VectorXd::Zero(3));
  Rng rng(72);
  for (int t = 0; t < 50; ++t) {
    const Eigen::VectorXd g = rng.normal_vector(3);
    a.step(g);
    b.step(g);
    CHECK((a.iterate() - b.iterate()).norm() <= 1e-12);
  }
}

TEST_CASE("observed-energy scaling cancels a common gradient factor") {
  const Schedule sched = Schedule::adagrad_scale(0.7);
  OnlineLearner a(Algo::AdaGrad, sched, ball(4, 1.0), Eigen::VectorXd::Zero(4));
  OnlineLearner b(Algo::AdaGrad, sched, ball(4, 1.0), Eigen::VectorXd::Zero(4));
  Rng rng(73);
  for (int t = 0; t < 60; ++t) {
    const Eigen::VectorXd g = rng.normal_vector(4);
    a.step(g);
    b.step(7.3 * g);
    CHECK((a.iterate() - b.iterate()).norm() <= 1e-9 * (1.0 + a.iterate().norm()));
  }
}

TEST_CASE("optimistic learner with default hints") {
  OnlineLearner lrn(Algo::OAda, Schedule::oada_rule(1.0), ball(2, 10.0), Eigen::VectorXd::Zero(2));
  const Eigen::VectorXd g = vec2(3.0, 4.0);
  for (int t = 0; t < 5; ++t) lrn.step(g);
  // first round pays ||g - 0||^2, every later round matches the hint exactly
  CHECK(lrn.V() == 25.0);
  CHECK((lrn.hint() - g).norm() == 0.0);
}

TEST_CASE("optimistic learner rejects an infinite move") {
  OnlineLearner lrn(Algo::OAda, Schedule::oada_rule(1.0), ball(2, 1.0), Eigen::VectorXd::Zero(2),
                    vec2(1.0, 0.0));
  // perfect hint keeps V at zero, but the combined direction is nonzero
  CHECK_THROWS_AS(lrn.step_with_hint(vec2(1.0, 0.0), vec2(1.0, 0.0)), std::domain_error);

  OnlineLearner ok(Algo::OAda, Schedule::oada_rule(1.0), ball(2, 1.0), Eigen::VectorXd::Zero(2),
                   vec2(1.0, 0.0));
  // zero combined direction is a legal stand-still
  CHECK(ok.step_with_hint(vec2(1.0, 0.0), Eigen::VectorXd::Zero(2)) == kInf);
  CHECK(ok.iterate().norm() == 0.0);
  CHECK(ok.hint().norm() == 0.0);
}

TEST_CASE("smoothness observations tighten the stepsize cap") {
  OnlineLearner lrn(Algo::OAda, Schedule::oada_rule_capped(10.0, 1.0, 0.5, 4.0), ball(2, 5.0),
                    Eigen::VectorXd::Zero(2));
  CHECK(lrn.step(vec2(1.0, 0.0)) == 0.25);  // cap 1/4 binds under eta/sqrt(V) = 10
  lrn.observe_smoothness(8.0);
  CHECK(lrn.step(vec2(1.0, 0.0)) == 0.125);
  lrn.observe_smoothness(2.0);  // running max never loosens
  CHECK(lrn.step(vec2(1.0, 0.0)) == 0.125);
}

TEST_CASE("driver validates schedule and start point") {
  CHECK_THROWS_AS(OnlineLearner(Algo::OGD, Schedule::adagrad_scale(1.0), ball(2, 1.0),
                                Eigen::VectorXd::Zero(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(OnlineLearner(Algo::AdaGrad, Schedule::ogd_strong(1.0), ball(2, 1.0),
                                Eigen::VectorXd::Zero(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(OnlineLearner(Algo::OAda, Schedule::da_adaptive_scale(1.0), ball(2, 1.0),
                                Eigen::VectorXd::Zero(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(OnlineLearner(Algo::OGD, Schedule::ogd_strong(1.0), ball(2, 1.0), vec2(5.0, 0.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(OnlineLearner(Algo::OAdaR, Schedule::oada_rule(1.0), ball(2, 1.0),
                                Eigen::VectorXd::Zero(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(OnlineLearner::make_restarting(-1.0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(OnlineLearner::make_restarting(1.0, 2, 0), std::invalid_argument);

  OgdState s{Eigen::VectorXd::Zero(2)};
  CHECK_THROWS_AS(ogd_step(s, ball(2, 1.0), vec2(1.0, 0.0), kInf), std::invalid_argument);
  CHECK_THROWS_AS(ogd_step(s, ball(2, 1.0), vec2(1.0, 0.0), 0.0), std::invalid_argument);

  OnlineLearner og(Algo::OGD, Schedule::ogd_strong(1.0), ball(2, 1.0), Eigen::VectorXd::Zero(2));
  CHECK_THROWS_AS(og.step_with_hint(vec2(1.0, 0.0), vec2(1.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(og.hint(), std::invalid_argument);

  CHECK(algo_from_name("oadar") == Algo::OAdaR);
  CHECK(algo_name(Algo::DAAdaptive) == "da-ada");
  CHECK_THROWS_AS(algo_from_name("sgd"), std::invalid_argument);
  CHECK(schedule_kind_from_name("smooth-fixed") == ScheduleKind::SmoothFixed);
  CHECK_THROWS_AS(schedule_kind_from_name("bogus"), std::invalid_argument);
}

}  // TEST_SUITE
