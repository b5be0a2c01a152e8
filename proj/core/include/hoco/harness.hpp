#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hoco/conversions.hpp"
#include "hoco/learners.hpp"
#include "hoco/noise.hpp"
#include "hoco/problems.hpp"
#include "hoco/trace.hpp"

namespace hoco {

// A named problem instance: either a round-varying linear stream or a fixed
// objective observed through noisy gradients.
struct ProblemSetup {
  std::string name;     // linear | abs | quad | holder | strong | sat-abs
  bool linear = false;
  bool drift = false;
  double drift_angle = 0.0;
  double G = 1.0;       // linear stream magnitude
  Objective obj{};      // the fixed families
};

// x_star defaults to center + 0.3 * radius * e_1 when the family needs one
// and none is supplied (callers pass domain info separately; here x_star is
// explicit). drift requires d >= 2.
ProblemSetup make_problem(const std::string& name, int d, double G, double H, double nu,
                          double mu, const Eigen::VectorXd& x_star, bool drift = false,
                          double drift_angle = 0.01);

// Largest exact-gradient norm the problem can show on the domain.
double lipschitz_bound(const ProblemSetup& problem, const BallDomain& domain);

// The documented default schedule for each algorithm on each problem:
// ogd/da use the known-parameter rule (strong rule on the strongly convex
// family, smoothness-capped rule with gamma = 1 on the smooth family);
// adagrad takes eta = diam/sqrt(2); da-ada takes the diameter; oada takes
// eta = diam/sqrt(2) with an infinite cap.
Schedule default_schedule(Algo algo, const ProblemSetup& problem, const BallDomain& domain,
                          double sigma, double p, double gamma = 1.0);

struct RunConfig {
  Algo algo = Algo::OGD;
  Schedule sched;
  ProblemSetup problem;
  BallDomain domain{Eigen::VectorXd::Zero(1), 1.0};
  long T = 0;
  NoiseModel noise;
  std::uint64_t seed = 0;  // stream seed, already derived
  long chunk = 0;          // oadar restart period
  std::optional<Eigen::VectorXd> x1;  // default: domain center
};

struct RunResult {
  RunTrace trace;
  Eigen::VectorXd best_comparator;
  double regret_best = 0.0;   // true losses vs best fixed point in hindsight
  double regret_xstar = 0.0;  // vs project(x_star); NaN for linear streams
  double subopt_avg = 0.0;    // F(mean x_t) - F*; NaN when F* is not defined
  double subopt_last = 0.0;   // F(x_{T+1}) - F*
};

RunResult run_oco(const RunConfig& cfg);

// One pass to max(grid), metrics at every grid horizon. Stream draws do not
// depend on the horizon, so a prefix of a long run IS the short run.
struct PrefixPoint {
  long T = 0;
  double regret_best = 0.0, regret_xstar = 0.0;
  double subopt_avg = 0.0, subopt_last = 0.0;
};
std::vector<PrefixPoint> run_prefix(const RunConfig& cfg, const std::vector<long>& grid);

// Least squares on (log T, log y). Needs >= 5 points and positive values.
struct SlopeFit {
  double slope = 0.0, intercept = 0.0;
  int n = 0;
};
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points);

// --- sweeps ----------------------------------------------------------------

struct SweepConfig {
  std::vector<Algo> algos;
  std::vector<std::string> problems;
  int d = 2;
  double radius = 1.0;
  double G = 1.0, H = 1.0, nu = 1.0, mu = 1.0;
  double sigma = 0.0, p = 2.0;
  double gamma = 1.0;
  std::vector<long> Ts;
  int seeds = 1;
  std::uint64_t master = 0;
  std::string comparator_kind = "best";  // which comparator final_regret uses
  long chunk = 8;                        // oadar restart period
  bool drift = false;
};

struct SweepRow {
  std::string algo, problem;
  int d = 0;
  double p = 2.0, sigma = 0.0;
  long T = 0;
  std::uint64_t seed = 0;  // seed index within the sweep
  double final_regret = 0.0, final_subopt = 0.0;
  std::string comparator_kind;
};

// One row per (algo, problem, T, seed), emitted in that nested order. The
// stream seed for a cell depends on (algo, problem, seed index) but not T.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

void write_csv(const std::vector<SweepRow>& rows, std::ostream& os);

// Aggregates rows into per-(algo,problem) slope fits of mean |metric| vs T.
struct SlopeSummary {
  std::string algo, problem;
  SlopeFit regret_fit, subopt_fit;
  bool has_subopt = false;
};
std::vector<SlopeSummary> summarize_slopes(const std::vector<SweepRow>& rows);

}  // namespace hoco
