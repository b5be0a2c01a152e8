#include "hoco/conversions.hpp"

#include <cmath>
#include <stdexcept>

#include "hoco/problems.hpp"

namespace hoco {

Eigen::VectorXd average_iterate(const std::vector<Eigen::VectorXd>& xs, long T) {
  if (T < 1 || static_cast<std::size_t>(T) > xs.size())
    throw std::invalid_argument("average_iterate: T out of range");
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(xs[0].size());
  for (long t = 0; t < T; ++t) acc += xs[static_cast<std::size_t>(t)];
  return acc / static_cast<double>(T);
}

Eigen::VectorXd anchor_update(const Eigen::VectorXd& y, const Eigen::VectorXd& x_t,
                              const Eigen::VectorXd& x_next, long t, long T) {
  if (t < 1 || t > T) throw std::invalid_argument("anchor_update: t out of range");
  const double w = static_cast<double>(T - t) / static_cast<double>(T);
  return y + w * (x_next - x_t);
}

AnchorRun run_anchored(OnlineLearner& learner, const Objective& F, long T,
                       const NoiseModel& noise, Rng& rng) {
  if (T < 1) throw std::invalid_argument("run_anchored: T must be >= 1");
  AnchorRun run;
  run.xs.reserve(T + 1);
  run.ys.reserve(T);
  Eigen::VectorXd y = learner.iterate();
  for (long t = 1; t <= T; ++t) {
    const Eigen::VectorXd x_t = learner.iterate();
    run.xs.push_back(x_t);
    run.ys.push_back(y);
    GradSample s = noisy_gradient(F, y, noise, rng);
    run.etas.push_back(learner.step(s.g));
    run.gs.push_back(std::move(s.g));
    run.true_grads.push_back(std::move(s.true_grad));
    run.noises.push_back(std::move(s.noise));
    y = anchor_update(y, x_t, learner.iterate(), t, T);
  }
  run.xs.push_back(learner.iterate());
  return run;
}

double anchor_certificate_slack(const AnchorRun& run, const Objective& F, const Eigen::VectorXd& x) {
  const long T = static_cast<long>(run.ys.size());
  double reg = 0.0;
  for (long t = 0; t < T; ++t)
    reg += gradient(F, run.ys[static_cast<std::size_t>(t)]).dot(run.xs[static_cast<std::size_t>(t)] - x);
  const double lhs = value(F, run.ys.back()) - value(F, x);
  return reg / static_cast<double>(T) - lhs;
}

std::string preset_name(BudgetPreset p) {
  switch (p) {
    case BudgetPreset::Manual: return "manual";
    case BudgetPreset::Dep: return "dep";
    case BudgetPreset::Free: return "free";
    case BudgetPreset::ExtDep: return "ext-dep";
    case BudgetPreset::ExtFree: return "ext-free";
    case BudgetPreset::HolderDep: return "holder-dep";
    case BudgetPreset::HolderFree: return "holder-free";
  }
  throw std::logic_error("preset_name");
}

BudgetPreset preset_from_name(const std::string& s) {
  if (s == "manual") return BudgetPreset::Manual;
  if (s == "dep") return BudgetPreset::Dep;
  if (s == "free") return BudgetPreset::Free;
  if (s == "ext-dep") return BudgetPreset::ExtDep;
  if (s == "ext-free") return BudgetPreset::ExtFree;
  if (s == "holder-dep") return BudgetPreset::HolderDep;
  if (s == "holder-free") return BudgetPreset::HolderFree;
  throw std::invalid_argument("unknown preset: " + s);
}

namespace {
long ceil_at_least_one(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("resolve_budget: non-finite chunk formula");
  const double c = std::ceil(v);
  return c < 1.0 ? 1 : static_cast<long>(c);
}
}  // namespace

BudgetConfig resolve_budget(BudgetPreset preset, long N, double delta,
                            const ProblemParams& prm, long manual_T) {
  if (N < 1) throw std::invalid_argument("resolve_budget: N must be >= 1");
  BudgetConfig cfg;
  cfg.preset = preset;
  cfg.N = N;
  cfg.delta = delta;
  const double Nd = static_cast<double>(N);
  const long half = static_cast<long>(std::ceil(0.5 * Nd));

  const auto need_delta = [&]() {
    if (!(delta > 0.0)) throw std::invalid_argument("resolve_budget: delta must be positive");
  };
  switch (preset) {
    case BudgetPreset::Manual:
      need_delta();
      if (manual_T < 1 || manual_T > N)
        throw std::invalid_argument("resolve_budget: manual T must lie in [1, N]");
      cfg.T = manual_T;
      break;
    case BudgetPreset::Dep: {
      need_delta();
      if (!(prm.Delta > 0.0) || !(prm.G > 0.0 || prm.sigma > 0.0))
        throw std::invalid_argument("resolve_budget: dep needs Delta > 0 and G or sigma");
      long t = 1;
      if (prm.G > 0.0)
        t = std::max(t, ceil_at_least_one(std::pow(delta * prm.G * Nd / prm.Delta, 2.0 / 3.0)));
      if (prm.sigma > 0.0)
        t = std::max(t, ceil_at_least_one(
                            std::pow(delta * prm.sigma * Nd / prm.Delta, prm.p / (2.0 * prm.p - 1.0))));
      cfg.T = std::min(half, t);
      break;
    }
    case BudgetPreset::Free:
    case BudgetPreset::ExtFree:
      need_delta();
      cfg.T = std::min(half, ceil_at_least_one(std::pow(delta * Nd, 2.0 / 3.0)));
      break;
    case BudgetPreset::ExtDep: {
      need_delta();
      if (!(prm.Delta > 0.0) || !(prm.H > 0.0 || prm.G > 0.0 || prm.sigma > 0.0))
        throw std::invalid_argument("resolve_budget: ext-dep needs Delta > 0 and H, G, or sigma");
      long t = 1;
      if (prm.H > 0.0)
        t = std::max(t, ceil_at_least_one(std::pow(
                            std::pow(delta, 1.0 + prm.nu) * prm.H * Nd / prm.Delta,
                            2.0 / (3.0 + 2.0 * prm.nu))));
      if (prm.G > 0.0)
        t = std::max(t, ceil_at_least_one(std::pow(delta * prm.G * Nd / prm.Delta, 2.0 / 3.0)));
      if (prm.sigma > 0.0)
        t = std::max(t, ceil_at_least_one(
                            std::pow(delta * prm.sigma * Nd / prm.Delta, prm.p / (2.0 * prm.p - 1.0))));
      cfg.T = std::min(half, t);
      break;
    }
    case BudgetPreset::HolderDep: {
      if (!(prm.H > 0.0) || !(prm.Delta > 0.0))
        throw std::invalid_argument("resolve_budget: holder-dep needs H > 0 and Delta > 0");
      const double r = prm.p * prm.nu + (prm.p - 1.0) * (1.0 + prm.nu);
      const double t_raw = std::pow(prm.sigma, prm.p * (1.0 + prm.nu) / r) *
                               std::pow(Nd, prm.p * prm.nu / r) /
                               (std::pow(prm.H, prm.p / r) * std::pow(prm.Delta, prm.p * prm.nu / r)) +
                           1.0;
      cfg.T = std::min(half, ceil_at_least_one(t_raw));
      cfg.delta = std::pow(prm.Delta * static_cast<double>(cfg.T) / (prm.H * Nd), 1.0 / (1.0 + prm.nu));
      break;
    }
    case BudgetPreset::HolderFree:
      cfg.T = std::min(static_cast<long>(N), ceil_at_least_one(std::sqrt(Nd)));
      cfg.delta = std::pow(Nd, -0.25);
      break;
  }
  cfg.K = N / cfg.T;
  cfg.D = cfg.delta / static_cast<double>(cfg.T);
  if (cfg.K < 1) throw std::logic_error("resolve_budget: empty budget");
  return cfg;
}

BudgetedRun run_budgeted(const BudgetConfig& cfg, const InnerFactory& make_inner,
                         const Objective& F, const NoiseModel& noise,
                         const Eigen::VectorXd& y0, Rng& rng) {
  if (y0.size() != F.d) throw std::invalid_argument("run_budgeted: y0 dimension mismatch");
  if (cfg.K < 1 || cfg.T < 1 || !(cfg.D > 0.0))
    throw std::invalid_argument("run_budgeted: bad config");
  const BallDomain dom(Eigen::VectorXd::Zero(F.d), cfg.D);
  BudgetedRun run;
  run.cfg = cfg;
  run.y0 = y0;
  run.F_y0 = value(F, y0);
  const long total = cfg.K * cfg.T;
  run.xs.reserve(total); run.ys.reserve(total); run.zs.reserve(total);

  OnlineLearner learner = make_inner(dom, cfg.T);
  const bool self_restarting = learner.algo() == Algo::OAdaR;
  Eigen::VectorXd y = y0;
  for (long k = 0; k < cfg.K; ++k) {
    if (k > 0 && !self_restarting) learner = make_inner(dom, cfg.T);
    Eigen::VectorXd z_sum = Eigen::VectorXd::Zero(F.d);
    Eigen::VectorXd grad_sum = Eigen::VectorXd::Zero(F.d);
    for (long j = 0; j < cfg.T; ++j) {
      const Eigen::VectorXd x_n = learner.iterate();
      const double s_n = rng.uniform();  // committed before the gradient draw
      const Eigen::VectorXd z_n = y + s_n * x_n;
      GradSample smp = noisy_gradient(F, z_n, noise, rng);
      y += x_n;
      run.sum_g_dot_x += smp.g.dot(x_n);
      run.etas.push_back(learner.step(smp.g));
      z_sum += z_n;
      grad_sum += smp.true_grad;
      run.xs.push_back(x_n);
      run.ys.push_back(y);
      run.zs.push_back(z_n);
      run.ss.push_back(s_n);
      run.gs.push_back(std::move(smp.g));
      run.true_grads.push_back(std::move(smp.true_grad));
      run.noises.push_back(std::move(smp.noise));
    }
    run.zbar.push_back(z_sum / static_cast<double>(cfg.T));
    run.surrogate.push_back((grad_sum / static_cast<double>(cfg.T)).norm());
  }
  run.F_y_final = value(F, y);
  return run;
}

}  // namespace hoco
