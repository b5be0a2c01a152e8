// hoco: run / sweep / slope / certify / o2nc from the command line.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hoco/certify.hpp"
#include "hoco/conversions.hpp"
#include "hoco/harness.hpp"
#include "hoco/svg.hpp"
#include "hoco/trace_io.hpp"

using namespace hoco;

namespace {

// Fixed objectives put the minimizer at center + 0.3r along the first axis;
// the linear stream has no x*.
ProblemSetup build_problem(const std::string& name, int d, double G, double H, double nu,
                           double mu, const BallDomain& dom, bool drift) {
  Eigen::VectorXd xstar = Eigen::VectorXd::Zero(d);
  if (name != "linear") {
    xstar = dom.center();
    xstar[0] += 0.3 * dom.radius();
  }
  return make_problem(name, d, G, H, nu, mu, xstar, drift, 0.01);
}

NoiseModel build_noise(double p, double sigma, double index) {
  if (sigma <= 0.0) return NoiseModel::none();
  if (p >= 2.0) return NoiseModel::gaussian(sigma);
  return index > 0.0 ? NoiseModel::pareto_radial(TailSpec(p, sigma), index)
                     : NoiseModel::pareto_radial(TailSpec(p, sigma));
}

int cmd_run(const std::string& algo_s, const std::string& problem_s, int d, long T, double p,
            double sigma, double index, double G, double H, double nu, double mu,
            double radius, long chunk, bool drift, std::uint64_t seed,
            const std::string& out) {
  RunConfig rc;
  rc.algo = algo_from_name(algo_s);
  rc.domain = BallDomain(Eigen::VectorXd::Zero(d), radius);
  rc.problem = build_problem(problem_s, d, G, H, nu, mu, rc.domain, drift);
  rc.noise = build_noise(p, sigma, index);
  rc.sched = default_schedule(rc.algo, rc.problem, rc.domain, sigma, p);
  rc.T = T;
  rc.seed = seed;
  rc.chunk = chunk;
  const RunResult r = run_oco(rc);

  const bool linear = rc.problem.linear;
  double loss = 0.0, lin_obs = 0.0, lin_exact = 0.0;
  Eigen::VectorXd W = Eigen::VectorXd::Zero(d);
  for (long t = 0; t < T; ++t) {
    const Eigen::VectorXd diff = r.trace.xs[t] - r.best_comparator;
    lin_obs += r.trace.gs[t].dot(diff);
    lin_exact += r.trace.true_grads[t].dot(diff);
    if (linear) {
      loss += r.trace.true_grads[t].dot(r.trace.xs[t]);
      W += r.trace.true_grads[t];
    } else {
      loss += value(rc.problem.obj, r.trace.xs[t]);
    }
  }
  const double comp_loss =
      linear ? W.dot(r.best_comparator) : T * value(rc.problem.obj, r.best_comparator);

  std::printf("algo=%s problem=%s d=%d T=%ld p=%s sigma=%s seed=%llu\n", algo_s.c_str(),
              problem_s.c_str(), d, T, format_shortest(p).c_str(),
              format_shortest(sigma).c_str(), static_cast<unsigned long long>(seed));
  std::printf("loss_learner=%s\n", format_shortest(loss).c_str());
  std::printf("loss_comparator=%s\n", format_shortest(comp_loss).c_str());
  std::printf("regret_best=%s\n", format_shortest(r.regret_best).c_str());
  std::printf("regret_xstar=%s\n", format_shortest(r.regret_xstar).c_str());
  std::printf("linearized_observed=%s\n", format_shortest(lin_obs).c_str());
  std::printf("linearized_exact=%s\n", format_shortest(lin_exact).c_str());
  std::printf("subopt_avg=%s\n", format_shortest(r.subopt_avg).c_str());
  std::printf("subopt_last=%s\n", format_shortest(r.subopt_last).c_str());
  if (!out.empty()) {
    write_trace_file(r.trace, out);
    std::printf("trace=%s rounds=%ld\n", out.c_str(), T);
  }
  return 0;
}

int cmd_sweep(const SweepConfig& sc, const std::string& out) {
  const std::vector<SweepRow> rows = run_sweep(sc);
  std::ofstream os(out);
  if (!os) {
    std::fprintf(stderr, "cannot open %s\n", out.c_str());
    return 2;
  }
  write_csv(rows, os);
  std::printf("%zu rows -> %s\n", rows.size(), out.c_str());
  return 0;
}

std::vector<SweepRow> read_csv_rows(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty csv: " + path);
  const std::string want = "algo,problem,d,p,sigma,T,seed,final_regret,final_subopt,comparator_kind";
  if (line != want) throw std::runtime_error("unexpected csv header: " + line);
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 10) throw std::runtime_error("bad csv row: " + line);
    SweepRow r;
    r.algo = f[0];
    r.problem = f[1];
    r.d = std::stoi(f[2]);
    r.p = parse_exact(f[3]);
    r.sigma = parse_exact(f[4]);
    r.T = std::stol(f[5]);
    r.seed = std::stoull(f[6]);
    r.final_regret = parse_exact(f[7]);
    r.final_subopt = parse_exact(f[8]);
    r.comparator_kind = f[9];
    rows.push_back(std::move(r));
  }
  return rows;
}

int cmd_slope(const std::string& in, const std::string& svg_out) {
  const std::vector<SweepRow> rows = read_csv_rows(in);
  const std::vector<SlopeSummary> sums = summarize_slopes(rows);
  if (sums.empty()) {
    std::fprintf(stderr, "no (algo, problem) groups with >= 5 horizons\n");
    return 2;
  }
  for (const SlopeSummary& s : sums) {
    std::printf("%s/%s: regret slope %s (n=%d)", s.algo.c_str(), s.problem.c_str(),
                format_shortest(s.regret_fit.slope).c_str(), s.regret_fit.n);
    if (s.has_subopt)
      std::printf(", subopt slope %s", format_shortest(s.subopt_fit.slope).c_str());
    std::printf("\n");
  }
  if (!svg_out.empty()) {
    // mean regret vs T per group, fit line from the first group
    std::vector<SvgSeries> series;
    for (const SlopeSummary& s : sums) {
      std::map<long, std::pair<double, long>> acc;
      for (const SweepRow& r : rows)
        if (r.algo == s.algo && r.problem == s.problem) {
          acc[r.T].first += std::abs(r.final_regret);
          acc[r.T].second += 1;
        }
      SvgSeries sr;
      sr.label = s.algo + "/" + s.problem;
      for (const auto& [T, v] : acc)
        sr.pts.emplace_back(static_cast<double>(T), v.first / v.second);
      series.push_back(std::move(sr));
    }
    const std::string svg =
        svg_loglog("mean final regret vs rounds", "T", "mean regret", series,
                   std::make_pair(sums[0].regret_fit.slope, sums[0].regret_fit.intercept));
    std::ofstream os(svg_out);
    os << svg;
    std::printf("chart -> %s\n", svg_out.c_str());
  }
  return 0;
}

int cmd_certify(const std::string& in, int extra, std::uint64_t seed) {
  const RunTrace tr = read_trace_file(in);
  if (tr.algo == Algo::DAAdaptive) {
    std::printf("da-ada has no pathwise certificate; skipped\n");
    return 0;
  }
  Rng rng(seed);
  CertReport rep;
  if (tr.algo == Algo::OAdaR) {
    const long K = tr.T / tr.chunk;
    std::vector<Eigen::VectorXd> best(static_cast<std::size_t>(K));
    for (long k = 0; k < K; ++k) {
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(tr.dim());
      for (long n = k * tr.chunk; n < (k + 1) * tr.chunk; ++n) sum += tr.gs[n];
      const double nrm = sum.norm();
      best[k] = nrm > 0 ? Eigen::VectorXd(-(tr.domain.radius() / nrm) * sum)
                        : Eigen::VectorXd::Zero(tr.dim());
    }
    std::vector<std::vector<Eigen::VectorXd>> tuples = {best};
    for (int c = 0; c < extra; ++c) {
      std::vector<Eigen::VectorXd> tup(static_cast<std::size_t>(K));
      for (long k = 0; k < K; ++k) tup[k] = tr.domain.sample_uniform(rng);
      tuples.push_back(std::move(tup));
    }
    rep = certify_oadar_trace(tr, tuples);
  } else {
    std::vector<Eigen::VectorXd> comps;
    if (tr.problem == "linear") {
      Eigen::VectorXd W = Eigen::VectorXd::Zero(tr.dim());
      for (const auto& w : tr.true_grads) W += w;
      comps.push_back(best_linear_comparator(W, tr.domain));
    }
    comps.push_back(tr.domain.center());
    for (int c = 0; c < extra; ++c) comps.push_back(tr.domain.sample_uniform(rng));
    rep = certify_trace(tr, comps);
  }
  std::fputs(format_report(rep).c_str(), stdout);
  return rep.pass ? 0 : 1;
}

int cmd_o2nc(const std::string& preset_s, long N, double delta, const std::string& problem_s,
             int d, double p, double sigma, double index, double G, double H, double nu,
             const std::string& inner_s, long manual_T, int seeds, std::uint64_t seed,
             const std::string& out) {
  Objective F = Objective::saturated_abs(d);
  if (problem_s == "quad")
    F = Objective::quadratic(H, Eigen::VectorXd::Zero(d));
  else if (problem_s == "abs")
    F = Objective::abs_distance(G, Eigen::VectorXd::Zero(d));
  else if (problem_s != "sat-abs")
    throw std::invalid_argument("o2nc objective must be sat-abs, quad, or abs");

  const Eigen::VectorXd y0 = 0.6 * Eigen::VectorXd::Ones(d);
  ProblemParams prm;
  prm.G = G;
  prm.H = H;
  prm.nu = nu;
  prm.sigma = sigma;
  prm.p = p;
  prm.Delta = value(F, y0);
  const BudgetConfig cfg = resolve_budget(preset_from_name(preset_s), N, delta, prm, manual_T);

  const NoiseModel noise = build_noise(p, sigma, index);
  const InnerFactory inner = [&](const BallDomain& dm, long chunk) {
    if (inner_s == "oadar") return OnlineLearner::make_restarting(dm.radius(), dm.dim(), chunk);
    if (inner_s == "ogd")
      return OnlineLearner(Algo::OGD, Schedule::ogd_convex(dm.diameter(), G, sigma, p), dm,
                           dm.center());
    return OnlineLearner(Algo::AdaGrad, Schedule::adagrad_scale(dm.diameter() / std::sqrt(2.0)),
                         dm, dm.center());
  };

  double f_final = 0.0, gap = 0.0, surr = 0.0;
  std::vector<double> chunk_surr(static_cast<std::size_t>(cfg.K), 0.0);
  for (int s = 0; s < seeds; ++s) {
    Rng rng(derive_seed(seed, s));
    const BudgetedRun run = run_budgeted(cfg, inner, F, noise, y0, rng);
    f_final += run.F_y_final;
    gap += run.F_y_final - run.F_y0 - run.sum_g_dot_x;
    double m = 0.0;
    for (long k = 0; k < cfg.K; ++k) {
      m += run.surrogate[k];
      chunk_surr[k] += run.surrogate[k];
    }
    surr += m / static_cast<double>(cfg.K);
  }
  f_final /= seeds;
  gap /= seeds;
  surr /= seeds;

  std::printf("preset=%s N=%ld K=%ld T=%ld D=%s delta=%s inner=%s\n",
              preset_name(cfg.preset).c_str(), cfg.N, cfg.K, cfg.T,
              format_shortest(cfg.D).c_str(), format_shortest(cfg.delta).c_str(),
              inner_s.c_str());
  std::printf("F_y0=%s\n", format_shortest(value(F, y0)).c_str());
  std::printf("mean_F_final=%s\n", format_shortest(f_final).c_str());
  std::printf("mean_surrogate=%s\n", format_shortest(surr).c_str());
  std::printf("mean_ledger_gap=%s\n", format_shortest(gap).c_str());
  if (!out.empty()) {
    std::ofstream os(out);
    os << "chunk,mean_surrogate\n";
    for (long k = 0; k < cfg.K; ++k)
      os << k << ',' << format_shortest(chunk_surr[k] / seeds) << '\n';
    std::printf("per-chunk surrogates -> %s\n", out.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online convex optimization harness under heavy-tailed gradient noise"};
  app.require_subcommand(1);

  const std::vector<std::string> algo_names = {"ogd", "da", "adagrad", "da-ada", "oada", "oadar"};
  const std::vector<std::string> problem_names = {"linear", "abs", "quad", "holder", "strong", "sat-abs"};

  // run
  auto* run = app.add_subcommand("run", "single run: print the regret ledger, optionally save the trace");
  std::string r_algo = "ogd", r_problem = "abs", r_out;
  int r_d = 2;
  long r_T = 1024, r_chunk = 8;
  double r_p = 2.0, r_sigma = 0.0, r_index = 0.0, r_G = 1.0, r_H = 1.0, r_nu = 1.0, r_mu = 1.0,
         r_radius = 1.0;
  std::uint64_t r_seed = 0;
  bool r_drift = false;
  run->add_option("--algo", r_algo)->check(CLI::IsMember(algo_names));
  run->add_option("--problem", r_problem)->check(CLI::IsMember(problem_names));
  run->add_option("--dim", r_d)->check(CLI::PositiveNumber);
  run->add_option("--T", r_T)->check(CLI::PositiveNumber);
  run->add_option("--p", r_p, "noise moment order in (1,2]");
  run->add_option("--sigma", r_sigma, "noise level; 0 disables noise");
  run->add_option("--pareto-index", r_index, "Pareto tail index; 0 picks (p+2)/2");
  run->add_option("--G", r_G);
  run->add_option("--H", r_H);
  run->add_option("--nu", r_nu);
  run->add_option("--mu", r_mu);
  run->add_option("--radius", r_radius)->check(CLI::PositiveNumber);
  run->add_option("--chunk", r_chunk, "oadar restart period");
  run->add_option("--seed", r_seed);
  run->add_flag("--drift", r_drift, "slowly rotating linear stream");
  run->add_option("--out", r_out, "trace file path");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "grid of runs -> CSV");
  SweepConfig sc;
  std::vector<std::string> s_algos = {"ogd"};
  std::string s_out = "sweep.csv";
  sweep->add_option("--algo", s_algos)->check(CLI::IsMember(algo_names));
  sweep->add_option("--problem", sc.problems)->check(CLI::IsMember(problem_names));
  sweep->add_option("--dim", sc.d)->check(CLI::PositiveNumber);
  sweep->add_option("--radius", sc.radius)->check(CLI::PositiveNumber);
  sweep->add_option("--G", sc.G);
  sweep->add_option("--H", sc.H);
  sweep->add_option("--nu", sc.nu);
  sweep->add_option("--mu", sc.mu);
  sweep->add_option("--sigma", sc.sigma);
  sweep->add_option("--p", sc.p);
  sweep->add_option("--T", sc.Ts, "horizon grid")->check(CLI::PositiveNumber);
  sweep->add_option("--seeds", sc.seeds)->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sc.master, "master seed");
  sweep->add_option("--comparator", sc.comparator_kind)->check(CLI::IsMember({"best", "xstar"}));
  sweep->add_option("--chunk", sc.chunk);
  sweep->add_flag("--drift", sc.drift);
  sweep->add_option("--out", s_out, "CSV path");

  // slope
  auto* slope = app.add_subcommand("slope", "fit T-exponents from a sweep CSV");
  std::string l_in, l_svg;
  slope->add_option("--in", l_in, "sweep CSV")->required()->check(CLI::ExistingFile);
  slope->add_option("--svg", l_svg, "write a log-log chart here");

  // certify
  auto* certify = app.add_subcommand("certify", "check the pathwise bound on a saved trace");
  std::string c_in;
  int c_extra = 32;
  std::uint64_t c_seed = 0;
  certify->add_option("--in", c_in, "trace file")->required()->check(CLI::ExistingFile);
  certify->add_option("--comparators", c_extra, "random comparators to add")
      ->check(CLI::NonNegativeNumber);
  certify->add_option("--seed", c_seed, "comparator sampling seed");

  // o2nc
  auto* o2nc = app.add_subcommand("o2nc", "online-to-nonconvex conversion under a gradient budget");
  std::string o_preset = "free", o_problem = "sat-abs", o_inner = "adagrad", o_out;
  long o_N = 512, o_manual_T = 0;
  int o_d = 2, o_seeds = 1;
  double o_delta = 0.25, o_p = 2.0, o_sigma = 1.0, o_index = 0.0, o_G = 1.0, o_H = 1.0,
         o_nu = 1.0;
  std::uint64_t o_seed = 0;
  o2nc->add_option("--preset", o_preset)
      ->check(CLI::IsMember({"dep", "free", "ext-dep", "ext-free", "holder-dep", "holder-free", "manual"}));
  o2nc->add_option("--N", o_N, "gradient budget")->check(CLI::PositiveNumber);
  o2nc->add_option("--delta", o_delta, "stationarity radius")->check(CLI::PositiveNumber);
  o2nc->add_option("--problem", o_problem)->check(CLI::IsMember({"sat-abs", "quad", "abs"}));
  o2nc->add_option("--dim", o_d)->check(CLI::PositiveNumber);
  o2nc->add_option("--p", o_p);
  o2nc->add_option("--sigma", o_sigma);
  o2nc->add_option("--pareto-index", o_index);
  o2nc->add_option("--G", o_G);
  o2nc->add_option("--H", o_H);
  o2nc->add_option("--nu", o_nu);
  o2nc->add_option("--inner", o_inner, "inner learner")
      ->check(CLI::IsMember({"adagrad", "ogd", "oadar"}));
  o2nc->add_option("--T", o_manual_T, "chunk length for --preset manual");
  o2nc->add_option("--seeds", o_seeds, "average over this many runs")->check(CLI::PositiveNumber);
  o2nc->add_option("--seed", o_seed);
  o2nc->add_option("--out", o_out, "per-chunk surrogate CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(r_algo, r_problem, r_d, r_T, r_p, r_sigma, r_index, r_G, r_H, r_nu, r_mu,
                     r_radius, r_chunk, r_drift, r_seed, r_out);
    if (sweep->parsed()) {
      sc.algos.clear();
      for (const std::string& a : s_algos) sc.algos.push_back(algo_from_name(a));
      if (sc.problems.empty()) sc.problems = {"abs"};
      if (sc.Ts.empty()) sc.Ts = {512, 1024, 2048, 4096, 8192, 16384};
      return cmd_sweep(sc, s_out);
    }
    if (slope->parsed()) return cmd_slope(l_in, l_svg);
    if (certify->parsed()) return cmd_certify(c_in, c_extra, c_seed);
    if (o2nc->parsed())
      return cmd_o2nc(o_preset, o_N, o_delta, o_problem, o_d, o_p, o_sigma, o_index, o_G, o_H,
                      o_nu, o_inner, o_manual_T, o_seeds, o_seed, o_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
