#include "hoco/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "hoco/trace_io.hpp"

namespace hoco {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

ProblemSetup make_problem(const std::string& name, int d, double G, double H, double nu,
                          double mu, const Eigen::VectorXd& x_star, bool drift,
                          double drift_angle) {
  if (d <= 0) throw std::invalid_argument("make_problem: d must be positive");
  ProblemSetup s;
  s.name = name;
  if (name == "linear") {
    if (!(G > 0.0)) throw std::invalid_argument("make_problem: linear needs G > 0");
    s.linear = true;
    s.drift = drift;
    s.drift_angle = drift_angle;
    s.G = G;
    return s;
  }
  if (x_star.size() != d) throw std::invalid_argument("make_problem: x_star dimension mismatch");
  if (name == "abs") s.obj = Objective::abs_distance(G, x_star);
  else if (name == "quad") s.obj = Objective::quadratic(H, x_star);
  else if (name == "holder") s.obj = Objective::holder_power(H, nu, x_star);
  else if (name == "strong") s.obj = Objective::strong_quadratic(mu, x_star);
  else if (name == "sat-abs") s.obj = Objective::saturated_abs(d);
  else throw std::invalid_argument("make_problem: unknown problem " + name);
  return s;
}

double lipschitz_bound(const ProblemSetup& problem, const BallDomain& domain) {
  if (problem.linear) return problem.G;
  const Objective& f = problem.obj;
  const double reach = domain.radius() + (domain.center() - f.x_star).norm();
  switch (f.kind) {
    case ObjectiveKind::AbsDistance: return f.G;
    case ObjectiveKind::Quadratic: return f.H * reach;
    case ObjectiveKind::HolderPower: return f.H * std::pow(reach, f.nu);
    case ObjectiveKind::StrongQuadratic: return f.mu * reach;
    case ObjectiveKind::SaturatedAbs: return std::sqrt(static_cast<double>(f.d));
  }
  throw std::logic_error("lipschitz_bound");
}

Schedule default_schedule(Algo algo, const ProblemSetup& problem, const BallDomain& domain,
                          double sigma, double p, double gamma) {
  const double diam = domain.diameter();
  switch (algo) {
    case Algo::OGD:
    case Algo::DA:
      if (!problem.linear && problem.obj.kind == ObjectiveKind::StrongQuadratic)
        return Schedule::ogd_strong(problem.obj.mu);
      if (!problem.linear && problem.obj.kind == ObjectiveKind::Quadratic)
        return Schedule::smooth_fixed(problem.obj.H, gamma, diam, sigma, p);
      return Schedule::ogd_convex(diam, lipschitz_bound(problem, domain), sigma, p);
    case Algo::AdaGrad:
      return Schedule::adagrad_scale(diam / std::sqrt(2.0));
    case Algo::DAAdaptive:
      return Schedule::da_adaptive_scale(diam);
    case Algo::OAda:
    case Algo::OAdaR:
      return Schedule::oada_rule(diam / std::sqrt(2.0));
  }
  throw std::logic_error("default_schedule");
}

namespace {

struct LiveRun {
  OnlineLearner learner;
  std::optional<LinearAdversary> adv;
  Rng rng;
};

LiveRun start_run(const RunConfig& cfg) {
  if (cfg.T < 1) throw std::invalid_argument("run: T must be >= 1");
  Rng rng(cfg.seed);
  std::optional<LinearAdversary> adv;
  if (cfg.problem.linear) {
    adv = cfg.problem.drift
              ? LinearAdversary::drifting(cfg.problem.G, cfg.domain.dim(), cfg.problem.drift_angle, rng)
              : LinearAdversary::iid(cfg.problem.G, cfg.domain.dim());
  } else if (cfg.problem.obj.d != cfg.domain.dim()) {
    throw std::invalid_argument("run: problem/domain dimension mismatch");
  }
  const Eigen::VectorXd x1 = cfg.x1 ? *cfg.x1 : cfg.domain.center();
  if (cfg.algo == Algo::OAdaR) {
    if (cfg.domain.center().norm() != 0.0)
      throw std::invalid_argument("run: oadar needs an origin-centered domain");
    if (cfg.chunk < 1) throw std::invalid_argument("run: oadar needs a chunk length");
    return LiveRun{OnlineLearner::make_restarting(cfg.domain.radius(), cfg.domain.dim(), cfg.chunk, x1),
                   std::move(adv), rng};
  }
  return LiveRun{OnlineLearner(cfg.algo, cfg.sched, cfg.domain, x1), std::move(adv), rng};
}

void init_trace(RunTrace& tr, const RunConfig& cfg) {
  tr.algo = cfg.algo;
  tr.sched = cfg.algo == Algo::OAdaR
                 ? Schedule::oada_rule(std::sqrt(2.0) * cfg.domain.radius())
                 : cfg.sched;
  tr.domain = cfg.domain;
  tr.problem = cfg.problem.name;
  tr.p = cfg.noise.spec.p;
  tr.sigma = cfg.noise.spec.sigma;
  tr.T = cfg.T;
  tr.seed = cfg.seed;
  tr.chunk = cfg.algo == Algo::OAdaR ? cfg.chunk : 0;
}

// next-round gradient triple at point z
GradSample observe(const RunConfig& cfg, std::optional<LinearAdversary>& adv,
                   const Eigen::VectorXd& z, Rng& rng) {
  if (adv) {
    GradSample s;
    s.true_grad = adv->next(rng);
    s.noise = sample_noise(cfg.noise, cfg.domain.dim(), rng);
    s.g = s.true_grad + s.noise;
    return s;
  }
  return noisy_gradient(cfg.problem.obj, z, cfg.noise, rng);
}

}  // namespace

RunResult run_oco(const RunConfig& cfg) {
  LiveRun live = start_run(cfg);
  RunResult out;
  RunTrace& tr = out.trace;
  init_trace(tr, cfg);
  tr.xs.reserve(cfg.T + 1);

  const bool fixed = !cfg.problem.linear;
  Eigen::VectorXd w_sum = Eigen::VectorXd::Zero(cfg.domain.dim());
  double loss_sum = 0.0;
  if (cfg.algo == Algo::OAda) tr.hints.push_back(live.learner.hint());

  for (long t = 1; t <= cfg.T; ++t) {
    const Eigen::VectorXd x_t = live.learner.iterate();
    GradSample s = observe(cfg, live.adv, x_t, live.rng);
    if (fixed) loss_sum += value(cfg.problem.obj, x_t);
    else { loss_sum += s.true_grad.dot(x_t); w_sum += s.true_grad; }
    tr.xs.push_back(x_t);
    tr.etas.push_back(live.learner.step(s.g));
    tr.gs.push_back(std::move(s.g));
    tr.true_grads.push_back(std::move(s.true_grad));
    tr.noises.push_back(std::move(s.noise));
    if (cfg.algo == Algo::OAda) tr.hints.push_back(live.learner.hint());
  }
  tr.xs.push_back(live.learner.iterate());

  if (fixed) {
    const Objective& f = cfg.problem.obj;
    out.best_comparator = best_fixed_comparator(f, cfg.domain);
    const double f_ref = value(f, out.best_comparator);
    out.regret_best = loss_sum - static_cast<double>(cfg.T) * f_ref;
    out.regret_xstar = out.regret_best;
    const bool ref_is_min =
        f.kind != ObjectiveKind::SaturatedAbs || cfg.domain.contains(Eigen::VectorXd::Zero(f.d));
    if (ref_is_min) {
      out.subopt_avg = value(f, average_iterate(tr.xs, cfg.T)) - f_ref;
      out.subopt_last = value(f, tr.xs.back()) - f_ref;
    } else {
      out.subopt_avg = kNaN;
      out.subopt_last = kNaN;
    }
  } else {
    out.best_comparator = best_linear_comparator(w_sum, cfg.domain);
    out.regret_best = loss_sum - w_sum.dot(out.best_comparator);
    out.regret_xstar = kNaN;
    out.subopt_avg = kNaN;
    out.subopt_last = kNaN;
  }
  return out;
}

std::vector<PrefixPoint> run_prefix(const RunConfig& cfg, const std::vector<long>& grid) {
  if (grid.empty()) throw std::invalid_argument("run_prefix: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1]) throw std::invalid_argument("run_prefix: grid must be increasing");
  if (grid.front() < 1) throw std::invalid_argument("run_prefix: horizons must be >= 1");

  RunConfig local = cfg;
  local.T = grid.back();
  LiveRun live = start_run(local);

  const bool fixed = !cfg.problem.linear;
  const int d = cfg.domain.dim();
  Eigen::VectorXd w_sum = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd x_sum = Eigen::VectorXd::Zero(d);
  double loss_sum = 0.0;
  double f_ref = 0.0;
  bool ref_is_min = false;
  Eigen::VectorXd best;
  if (fixed) {
    best = best_fixed_comparator(cfg.problem.obj, cfg.domain);
    f_ref = value(cfg.problem.obj, best);
    ref_is_min = cfg.problem.obj.kind != ObjectiveKind::SaturatedAbs ||
                 cfg.domain.contains(Eigen::VectorXd::Zero(d));
  }

  std::vector<PrefixPoint> out;
  std::size_t next = 0;
  for (long t = 1; t <= local.T; ++t) {
    const Eigen::VectorXd x_t = live.learner.iterate();
    GradSample s = observe(local, live.adv, x_t, live.rng);
    if (fixed) loss_sum += value(cfg.problem.obj, x_t);
    else { loss_sum += s.true_grad.dot(x_t); w_sum += s.true_grad; }
    x_sum += x_t;
    live.learner.step(s.g);
    if (t == grid[next]) {
      PrefixPoint pt;
      pt.T = t;
      const double Td = static_cast<double>(t);
      if (fixed) {
        pt.regret_best = loss_sum - Td * f_ref;
        pt.regret_xstar = pt.regret_best;
        if (ref_is_min) {
          pt.subopt_avg = value(cfg.problem.obj, x_sum / Td) - f_ref;
          pt.subopt_last = value(cfg.problem.obj, live.learner.iterate()) - f_ref;
        } else {
          pt.subopt_avg = kNaN;
          pt.subopt_last = kNaN;
        }
      } else {
        const Eigen::VectorXd b = best_linear_comparator(w_sum, cfg.domain);
        pt.regret_best = loss_sum - w_sum.dot(b);
        pt.regret_xstar = kNaN;
        pt.subopt_avg = kNaN;
        pt.subopt_last = kNaN;
      }
      out.push_back(pt);
      if (++next == grid.size()) break;
    }
  }
  return out;
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 5)
    throw std::invalid_argument("fit_slope: need at least 5 points");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0))
      throw std::invalid_argument("fit_slope: log-log fit needs positive coordinates");
    mx += std::log(x);
    my += std::log(y);
  }
  const double n = static_cast<double>(points.size());
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n = static_cast<int>(points.size());
  return fit;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.algos.empty() || cfg.problems.empty() || cfg.Ts.empty() || cfg.seeds < 1)
    throw std::invalid_argument("run_sweep: empty sweep");
  std::vector<long> grid = cfg.Ts;
  std::sort(grid.begin(), grid.end());
  if (std::adjacent_find(grid.begin(), grid.end()) != grid.end())
    throw std::invalid_argument("run_sweep: duplicate horizons");
  if (cfg.comparator_kind != "best" && cfg.comparator_kind != "xstar")
    throw std::invalid_argument("run_sweep: comparator_kind must be best or xstar");

  const BallDomain domain(Eigen::VectorXd::Zero(cfg.d), cfg.radius);
  Eigen::VectorXd x_star = domain.center();
  x_star[0] += 0.3 * cfg.radius;

  NoiseModel noise = NoiseModel::none();
  if (cfg.sigma > 0.0) {
    const TailSpec spec(cfg.p, cfg.sigma);
    noise = cfg.p == 2.0 ? NoiseModel::gaussian(cfg.sigma) : NoiseModel::pareto_radial(spec);
  }

  std::vector<SweepRow> rows;
  for (std::size_t ai = 0; ai < cfg.algos.size(); ++ai) {
    const Algo algo = cfg.algos[ai];
    for (std::size_t pi = 0; pi < cfg.problems.size(); ++pi) {
      const std::string& pname = cfg.problems[pi];
      if (cfg.comparator_kind == "xstar" && pname == "linear")
        throw std::invalid_argument("run_sweep: linear streams have no fixed minimizer");
      const ProblemSetup problem =
          make_problem(pname, cfg.d, cfg.G, cfg.H, cfg.nu, cfg.mu, x_star, cfg.drift);
      RunConfig rc;
      rc.algo = algo;
      rc.problem = problem;
      rc.domain = domain;
      rc.noise = noise;
      rc.chunk = cfg.chunk;
      if (algo != Algo::OAdaR)
        rc.sched = default_schedule(algo, problem, domain, cfg.sigma, cfg.p, cfg.gamma);
      // grid-major emission, seed-major computation: one long run per seed
      std::vector<std::vector<PrefixPoint>> per_seed(cfg.seeds);
      for (int s = 0; s < cfg.seeds; ++s) {
        const std::uint64_t cell =
            (ai * cfg.problems.size() + pi) * static_cast<std::uint64_t>(cfg.seeds) +
            static_cast<std::uint64_t>(s);
        rc.seed = derive_seed(cfg.master, cell);
        per_seed[s] = run_prefix(rc, grid);
      }
      for (std::size_t gi = 0; gi < grid.size(); ++gi)
        for (int s = 0; s < cfg.seeds; ++s) {
          const PrefixPoint& pt = per_seed[s][gi];
          SweepRow row;
          row.algo = algo_name(algo);
          row.problem = pname;
          row.d = cfg.d;
          row.p = cfg.p;
          row.sigma = cfg.sigma;
          row.T = pt.T;
          row.seed = static_cast<std::uint64_t>(s);
          row.final_regret = cfg.comparator_kind == "best" ? pt.regret_best : pt.regret_xstar;
          row.final_subopt = pt.subopt_avg;
          row.comparator_kind = cfg.comparator_kind;
          rows.push_back(std::move(row));
        }
    }
  }
  return rows;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << "algo,problem,d,p,sigma,T,seed,final_regret,final_subopt,comparator_kind\n";
  for (const auto& r : rows) {
    os << r.algo << ',' << r.problem << ',' << r.d << ',' << format_shortest(r.p) << ','
       << format_shortest(r.sigma) << ',' << r.T << ',' << r.seed << ','
       << format_shortest(r.final_regret) << ',' << format_shortest(r.final_subopt) << ','
       << r.comparator_kind << '\n';
  }
}

std::vector<SlopeSummary> summarize_slopes(const std::vector<SweepRow>& rows) {
  // group rows by (algo, problem); average metric over seeds at each T
  std::vector<SlopeSummary> out;
  for (std::size_t i = 0; i < rows.size();) {
    const std::string algo = rows[i].algo, problem = rows[i].problem;
    std::vector<long> ts;
    std::vector<double> reg_sum, sub_sum;
    std::vector<int> counts;
    std::size_t j = i;
    for (; j < rows.size() && rows[j].algo == algo && rows[j].problem == problem; ++j) {
      const auto& r = rows[j];
      std::size_t k = 0;
      while (k < ts.size() && ts[k] != r.T) ++k;
      if (k == ts.size()) {
        ts.push_back(r.T);
        reg_sum.push_back(0.0);
        sub_sum.push_back(0.0);
        counts.push_back(0);
      }
      reg_sum[k] += r.final_regret;
      sub_sum[k] += r.final_subopt;
      counts[k] += 1;
    }
    SlopeSummary s;
    s.algo = algo;
    s.problem = problem;
    std::vector<std::pair<double, double>> reg_pts, sub_pts;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      reg_pts.emplace_back(static_cast<double>(ts[k]), reg_sum[k] / counts[k]);
      sub_pts.emplace_back(static_cast<double>(ts[k]), sub_sum[k] / counts[k]);
    }
    s.regret_fit = fit_slope(reg_pts);
    s.has_subopt = std::all_of(sub_pts.begin(), sub_pts.end(),
                               [](const auto& p) { return p.second > 0.0; });
    if (s.has_subopt) s.subopt_fit = fit_slope(sub_pts);
    out.push_back(std::move(s));
    i = j;
  }
  return out;
}

}  // namespace hoco
