#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hoco/learners.hpp"
#include "hoco/noise.hpp"
#include "hoco/problems.hpp"

namespace hoco {

// x_bar = (1/T) sum of x_1..x_T (ignores a trailing x_{T+1} slot if present)
Eigen::VectorXd average_iterate(const std::vector<Eigen::VectorXd>& xs, long T);

// Anchor recursion for last-iterate guarantees: y_{t+1} = y_t + ((T-t)/T)(x_{t+1} - x_t).
Eigen::VectorXd anchor_update(const Eigen::VectorXd& y, const Eigen::VectorXd& x_t,
                              const Eigen::VectorXd& x_next, long t, long T);

// Runs a learner against linearized losses <grad F(y_t), x>, sampling noisy
// gradients at the anchor points y_t instead of the iterates. y_1 = x_1, and
// the final anchor y_T satisfies, pathwise and per comparator,
//   F(y_T) - F(x) <= (1/T) sum_t <grad F(y_t), x_t - x>.
struct AnchorRun {
  std::vector<Eigen::VectorXd> xs;  // x_1 .. x_{T+1}
  std::vector<Eigen::VectorXd> ys;  // y_1 .. y_T
  std::vector<Eigen::VectorXd> gs, true_grads, noises;
  std::vector<double> etas;
};
AnchorRun run_anchored(OnlineLearner& learner, const Objective& F, long T,
                       const NoiseModel& noise, Rng& rng);

// RHS minus LHS of the anchored-run guarantee at comparator x, exact gradients.
double anchor_certificate_slack(const AnchorRun& run, const Objective& F, const Eigen::VectorXd& x);

// --- budgeted nonconvex wrapper --------------------------------------------

enum class BudgetPreset { Manual, Dep, Free, ExtDep, ExtFree, HolderDep, HolderFree };

std::string preset_name(BudgetPreset p);
BudgetPreset preset_from_name(const std::string& s);

// Problem constants the parameter-dependent presets consume.
struct ProblemParams {
  double G = 0.0;      // Lipschitz bound
  double H = 0.0;      // smoothness / Holder constant
  double nu = 1.0;     // Holder exponent
  double sigma = 0.0;  // noise scale
  double p = 2.0;      // noise moment order
  double Delta = 0.0;  // initial suboptimality bound F(y_0) - inf F
};

struct BudgetConfig {
  BudgetPreset preset = BudgetPreset::Manual;
  long N = 0;      // total gradient budget
  long T = 0;      // restart period
  long K = 0;      // completed chunks, floor(N/T)
  double delta = 0.0;  // stationarity radius
  double D = 0.0;      // inner ball radius, delta / T
};

// Resolves a preset to (T, K, D) and possibly delta. Manual takes T (and
// delta) as given. Holder presets pick their own delta from the constants.
// Every ceil'd term is clamped to at least 1 and T never exceeds ceil(N/2),
// which keeps K*T >= N/4.
BudgetConfig resolve_budget(BudgetPreset preset, long N, double delta,
                            const ProblemParams& params, long manual_T = 0);

// Factory for the inner learner of each chunk: gets the origin-centered ball
// of radius D and the chunk length. A restarting learner (oadar) is created
// once and handles chunk boundaries itself; anything else is rebuilt fresh
// at every chunk start.
using InnerFactory = std::function<OnlineLearner(const BallDomain& dom, long chunk)>;

// One full budgeted run on objective F from y0:
//   x_n from the inner learner over B(D); y_n = y_{n-1} + x_n;
//   z_n = y_{n-1} + s_n x_n with s_n ~ U[0,1] drawn before the gradient;
//   the learner sees grad F(z_n) + noise.
// Runs n = 1..K*T and records everything chunk-level checks need.
struct BudgetedRun {
  BudgetConfig cfg;
  Eigen::VectorXd y0;
  std::vector<Eigen::VectorXd> xs, ys, zs, gs, true_grads, noises;
  std::vector<double> ss, etas;
  std::vector<Eigen::VectorXd> zbar;      // per-chunk mean of z_n
  std::vector<double> surrogate;          // per-chunk ||mean grad F(z_n)||
  double F_y_final = 0.0, F_y0 = 0.0;
  double sum_g_dot_x = 0.0;               // sum_n <g_n, x_n>, the decrement ledger
};
BudgetedRun run_budgeted(const BudgetConfig& cfg, const InnerFactory& make_inner,
                         const Objective& F, const NoiseModel& noise,
                         const Eigen::VectorXd& y0, Rng& rng);

}  // namespace hoco
