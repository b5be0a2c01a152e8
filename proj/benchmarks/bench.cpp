// Microbenchmarks: per-round learner cost, projection, noise sampling, and a
// whole harness run. Counters report rounds/second where it makes sense.
#include <benchmark/benchmark.h>

#include "hoco/harness.hpp"

using namespace hoco;

namespace {

BallDomain ball(int d) { return BallDomain(Eigen::VectorXd::Zero(d), 1.0); }

OnlineLearner make_learner(Algo algo, const BallDomain& dom) {
  switch (algo) {
    case Algo::OGD:
      return OnlineLearner(algo, Schedule::ogd_convex(dom.diameter(), 1.0, 1.0, 1.5), dom,
                           dom.center());
    case Algo::DA:
      return OnlineLearner(algo, Schedule::ogd_convex(dom.diameter(), 1.0, 1.0, 1.5), dom,
                           dom.center());
    case Algo::AdaGrad:
      return OnlineLearner(algo, Schedule::adagrad_scale(dom.diameter() / std::sqrt(2.0)), dom,
                           dom.center());
    case Algo::DAAdaptive:
      return OnlineLearner(algo, Schedule::da_adaptive_scale(dom.diameter()), dom, dom.center());
    case Algo::OAda:
      return OnlineLearner(algo, Schedule::oada_rule(dom.diameter() / std::sqrt(2.0)), dom,
                           dom.center());
    case Algo::OAdaR:
      return OnlineLearner::make_restarting(dom.radius(), dom.dim(), 16);
  }
  throw std::logic_error("unreachable");
}

void BM_learner_step(benchmark::State& state, Algo algo) {
  const int d = static_cast<int>(state.range(0));
  const BallDomain dom = ball(d);
  OnlineLearner learner = make_learner(algo, dom);
  Rng rng(7);
  std::vector<Eigen::VectorXd> gs(256);
  for (auto& g : gs) g = rng.sphere_vector(d);
  std::size_t i = 0;
  for (auto _ : state) {
    learner.step(gs[i++ & 255]);
    benchmark::DoNotOptimize(learner.iterate().data());
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_projection(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const BallDomain dom = ball(d);
  Rng rng(11);
  std::vector<Eigen::VectorXd> pts(256);
  for (auto& x : pts) x = 3.0 * rng.normal_vector(d);
  std::size_t i = 0;
  for (auto _ : state) {
    Eigen::VectorXd y = dom.project(pts[i++ & 255]);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_noise_sample(benchmark::State& state, NoiseModel model) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(13);
  for (auto _ : state) {
    Eigen::VectorXd e = sample_noise(model, d, rng);
    benchmark::DoNotOptimize(e.data());
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_full_run(benchmark::State& state) {
  const long T = state.range(0);
  RunConfig rc;
  rc.algo = Algo::AdaGrad;
  rc.domain = ball(8);
  rc.problem = make_problem("abs", 8, 1.0, 1, 1, 1, 0.3 * Eigen::VectorXd::Unit(8, 0));
  rc.noise = NoiseModel::pareto_radial(TailSpec(1.5, 1.0));
  rc.sched = default_schedule(rc.algo, rc.problem, rc.domain, 1.0, 1.5);
  rc.T = T;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    rc.seed = seed++;
    const RunResult r = run_oco(rc);
    benchmark::DoNotOptimize(r.regret_best);
  }
  state.SetItemsProcessed(state.iterations() * T);
}

}  // namespace

BENCHMARK_CAPTURE(BM_learner_step, ogd, Algo::OGD)->Arg(8)->Arg(64);
BENCHMARK_CAPTURE(BM_learner_step, da, Algo::DA)->Arg(8)->Arg(64);
BENCHMARK_CAPTURE(BM_learner_step, adagrad, Algo::AdaGrad)->Arg(8)->Arg(64);
BENCHMARK_CAPTURE(BM_learner_step, da_ada, Algo::DAAdaptive)->Arg(8)->Arg(64);
BENCHMARK_CAPTURE(BM_learner_step, oada, Algo::OAda)->Arg(8)->Arg(64);
BENCHMARK_CAPTURE(BM_learner_step, oadar, Algo::OAdaR)->Arg(8)->Arg(64);
BENCHMARK(BM_projection)->Arg(8)->Arg(64);
BENCHMARK_CAPTURE(BM_noise_sample, gaussian, NoiseModel::gaussian(1.0))->Arg(8);
BENCHMARK_CAPTURE(BM_noise_sample, pareto, NoiseModel::pareto_radial(TailSpec(1.5, 1.0)))->Arg(8);
BENCHMARK(BM_full_run)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
