#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hoco/conversions.hpp"

using namespace hoco;

namespace {
BallDomain ball(int d, double r) { return BallDomain(Eigen::VectorXd::Zero(d), r); }
}  // namespace

TEST_SUITE("conversions") {

TEST_CASE("anchor update matches the hand-worked step") {
  Eigen::VectorXd x1 = Eigen::VectorXd::Zero(2), x2(2);
  x2 << 1.0, 0.0;
  const Eigen::VectorXd y2 = anchor_update(x1, x1, x2, 1, 4);
  CHECK(std::abs(y2[0] - 0.75) <= 1e-15);
  CHECK(y2[1] == 0.0);
  CHECK_THROWS_AS(anchor_update(x1, x1, x2, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(anchor_update(x1, x1, x2, 5, 4), std::invalid_argument);
}

TEST_CASE("anchor recursion telescopes to the running average") {
  Rng rng(41);
  const long T = 7;
  std::vector<Eigen::VectorXd> xs;
  for (long t = 0; t < T; ++t) xs.push_back(rng.normal_vector(3));
  Eigen::VectorXd y = xs[0];
  for (long t = 1; t < T; ++t) y = anchor_update(y, xs[t - 1], xs[t], t, T);
  CHECK((y - average_iterate(xs, T)).norm() <= 1e-12);
  CHECK_THROWS_AS(average_iterate(xs, 0), std::invalid_argument);
  CHECK_THROWS_AS(average_iterate(xs, T + 1), std::invalid_argument);
}

TEST_CASE("anchored runs close their guarantee pathwise") {
  Rng rng(42);
  const int d = 3;
  const BallDomain dom = ball(d, 1.0);
  const Eigen::VectorXd xstar = rng.normal_vector(d) * 0.3;
  const Objective fams[] = {
      Objective::abs_distance(1.0, xstar),
      Objective::quadratic(1.5, xstar),
      Objective::strong_quadratic(1.0, xstar),
  };
  const NoiseModel noise = NoiseModel::pareto_radial(TailSpec(1.5, 0.5));
  for (const auto& F : fams) {
    for (int rep = 0; rep < 5; ++rep) {
      OnlineLearner lrn(Algo::AdaGrad, Schedule::adagrad_scale(dom.diameter() / std::sqrt(2.0)),
                        dom, dom.center());
      const AnchorRun run = run_anchored(lrn, F, 40, noise, rng);
      CHECK(run.xs.size() == 41);
      CHECK(run.ys.size() == 40);
      CHECK((run.ys.back() - average_iterate(run.xs, 40)).norm() <= 1e-9);
      for (int c = 0; c < 12; ++c) {
        const Eigen::VectorXd cmp = dom.sample_uniform(rng);
        CHECK(anchor_certificate_slack(run, F, cmp) >= -1e-9);
      }
      CHECK(anchor_certificate_slack(run, F, dom.project(xstar)) >= -1e-9);
    }
  }
}

TEST_CASE("budget presets resolve to the worked values") {
  ProblemParams prm;
  prm.G = 1.0; prm.sigma = 1.0; prm.p = 1.5; prm.Delta = 1.0;

  const BudgetConfig dep = resolve_budget(BudgetPreset::Dep, 1024, 0.1, prm);
  CHECK(dep.T == 33);  // tail term 102.4^(3/4) beats the Lipschitz term 102.4^(2/3)
  CHECK(dep.K == 31);
  CHECK(dep.D == doctest::Approx(0.1 / 33.0).epsilon(1e-15));

  const BudgetConfig fre = resolve_budget(BudgetPreset::Free, 1024, 0.1, prm);
  CHECK(fre.T == 22);
  CHECK(fre.K == 46);

  const BudgetConfig hf = resolve_budget(BudgetPreset::HolderFree, 256, 0.0, prm);
  CHECK(hf.T == 16);
  CHECK(hf.delta == 0.25);  // N^(-1/4)
  CHECK(hf.K == 16);
  CHECK(hf.D == doctest::Approx(0.25 / 16.0).epsilon(1e-15));

  const BudgetConfig man = resolve_budget(BudgetPreset::Manual, 16, 0.4, prm, 4);
  CHECK(man.T == 4);
  CHECK(man.K == 4);
  CHECK(man.D == 0.1);

  CHECK_THROWS_AS(resolve_budget(BudgetPreset::Manual, 16, 0.4, prm, 0), std::invalid_argument);
  CHECK_THROWS_AS(resolve_budget(BudgetPreset::Manual, 16, 0.4, prm, 17), std::invalid_argument);
  CHECK_THROWS_AS(resolve_budget(BudgetPreset::Manual, 16, 0.0, prm, 4), std::invalid_argument);
  CHECK_THROWS_AS(resolve_budget(BudgetPreset::Dep, 16, 0.1, ProblemParams{}), std::invalid_argument);
  CHECK_THROWS_AS(resolve_budget(BudgetPreset::HolderDep, 16, 0.0, ProblemParams{}), std::invalid_argument);
  CHECK_THROWS_AS(resolve_budget(BudgetPreset::Free, 0, 0.1, prm), std::invalid_argument);
  CHECK(preset_from_name("ext-free") == BudgetPreset::ExtFree);
  CHECK(preset_name(BudgetPreset::HolderDep) == "holder-dep");
  CHECK_THROWS_AS(preset_from_name("warmup"), std::invalid_argument);
}

TEST_CASE("every preset keeps at least a quarter of the budget") {
  ProblemParams prm;
  prm.G = 1.0; prm.H = 1.0; prm.nu = 0.5; prm.sigma = 1.0; prm.p = 1.5; prm.Delta = 0.7;
  const BudgetPreset presets[] = {BudgetPreset::Dep,      BudgetPreset::Free,
                                  BudgetPreset::ExtDep,   BudgetPreset::ExtFree,
                                  BudgetPreset::HolderDep, BudgetPreset::HolderFree};
  for (long N : {4L, 9L, 64L, 500L, 1024L, 4097L}) {
    for (BudgetPreset p : presets) {
      const BudgetConfig cfg = resolve_budget(p, N, 0.1, prm);
      CHECK(cfg.T >= 1);
      CHECK(cfg.T <= N);
      CHECK(cfg.K >= 1);
      CHECK(cfg.K * cfg.T >= (N + 3) / 4);
      CHECK(cfg.K * cfg.T <= N);
      CHECK(cfg.D == doctest::Approx(cfg.delta / static_cast<double>(cfg.T)).epsilon(1e-15));
      CHECK(cfg.delta > 0.0);
    }
    for (long t : {1L, (N + 1) / 2, N}) {
      const BudgetConfig cfg = resolve_budget(BudgetPreset::Manual, N, 0.1, prm, t);
      CHECK(cfg.K * cfg.T >= (N + 3) / 4);
    }
  }
}

TEST_CASE("budgeted runs keep each chunk inside its stationarity ball") {
  Rng rng(43);
  ProblemParams prm;
  prm.G = 1.0; prm.sigma = 0.5; prm.p = 1.5; prm.Delta = 1.0;
  const BudgetConfig cfg = resolve_budget(BudgetPreset::Free, 96, 0.5, prm);
  const Objective F = Objective::quadratic(1.0, Eigen::VectorXd::Zero(2));
  Eigen::VectorXd y0(2);
  y0 << 0.8, -0.3;
  const InnerFactory inner = [](const BallDomain& dom, long) {
    return OnlineLearner(Algo::AdaGrad, Schedule::adagrad_scale(dom.diameter() / std::sqrt(2.0)),
                         dom, dom.center());
  };
  const BudgetedRun run =
      run_budgeted(cfg, inner, F, NoiseModel::pareto_radial(TailSpec(1.5, 0.5)), y0, rng);
  const long total = cfg.K * cfg.T;
  CHECK(static_cast<long>(run.xs.size()) == total);
  CHECK(static_cast<long>(run.zs.size()) == total);
  CHECK(static_cast<long>(run.zbar.size()) == cfg.K);
  CHECK(static_cast<long>(run.surrogate.size()) == cfg.K);
  for (long n = 0; n < total; ++n) {
    CHECK(run.xs[n].norm() <= cfg.D * (1.0 + 1e-12));
    CHECK(run.ss[n] >= 0.0);
    CHECK(run.ss[n] < 1.0);
    const long k = n / cfg.T;
    CHECK((run.zs[n] - run.zbar[k]).norm() <= cfg.delta * (1.0 + 1e-9));
  }
  // y_n really is the running sum of the x's
  Eigen::VectorXd y = y0;
  for (long n = 0; n < total; ++n) {
    y += run.xs[n];
    CHECK((y - run.ys[n]).norm() <= 1e-12);
  }
  CHECK(run.F_y0 == doctest::Approx(value(F, y0)).epsilon(1e-15));
}

TEST_CASE("noiseless telescoping on a locally linear stretch") {
  // With the path confined to one linear piece of G||y - 0|| the single-sample
  // segment estimate is exact, so the value ledger closes pathwise.
  Rng rng(44);
  const Objective F = Objective::abs_distance(1.0, Eigen::VectorXd::Zero(1));
  const BudgetConfig cfg = resolve_budget(BudgetPreset::Manual, 16, 0.4, ProblemParams{}, 4);
  Eigen::VectorXd y0(1);
  y0 << 5.0;  // moves at most K*delta = 1.6, never near the kink
  const InnerFactory inner = [](const BallDomain& dom, long) {
    return OnlineLearner(Algo::AdaGrad, Schedule::adagrad_scale(dom.diameter() / std::sqrt(2.0)),
                         dom, dom.center());
  };
  const BudgetedRun run = run_budgeted(cfg, inner, F, NoiseModel::none(), y0, rng);
  CHECK(std::abs((run.F_y_final - run.F_y0) - run.sum_g_dot_x) <= 1e-12);
  CHECK(run.surrogate.size() == 4);
  for (double s : run.surrogate) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("restarting inner learner is built once and survives chunk turnover") {
  Rng rng(45);
  const BudgetConfig cfg = resolve_budget(BudgetPreset::Manual, 24, 0.6, ProblemParams{}, 6);
  const Objective F = Objective::quadratic(1.0, Eigen::VectorXd::Zero(2));
  Eigen::VectorXd y0(2);
  y0 << 0.5, 0.5;
  const InnerFactory inner = [](const BallDomain& dom, long chunk) {
    return OnlineLearner::make_restarting(dom.radius(), static_cast<int>(dom.dim()), chunk);
  };
  const BudgetedRun run = run_budgeted(cfg, inner, F, NoiseModel::none(), y0, rng);
  CHECK(static_cast<long>(run.xs.size()) == cfg.K * cfg.T);
  for (const auto& x : run.xs) CHECK(x.norm() <= cfg.D * (1.0 + 1e-12));
}

}  // TEST_SUITE
