#pragma once

#include <limits>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "hoco/geometry.hpp"

namespace hoco {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Algo { OGD, DA, AdaGrad, DAAdaptive, OAda, OAdaR };

std::string algo_name(Algo a);
Algo algo_from_name(const std::string& s);

// Stepsize rules. D is always a diameter-scale quantity: callers working on a
// ball of radius r pass D = 2r.
enum class ScheduleKind {
  OGDConvex,        // min(D/(G sqrt(t)), D/(sigma t^{1/p})), absent branches = +inf
  OGDStrong,        // 1/(mu t)
  SmoothFixed,      // min(1/(4H), gamma*D, D/(sigma t^{1/p}))
  AdaGradScale,     // eta / sqrt(V), V = running sum ||g_s||^2
  DAAdaptiveScale,  // 2D / sqrt(V)
  OAdaRule,         // min(eta / sqrt(V), gamma_t), V = running sum ||g_s - h_s||^2
};

enum class GammaRule { Infinite, HolderCap };

std::string schedule_kind_name(ScheduleKind k);
ScheduleKind schedule_kind_from_name(const std::string& s);

struct Schedule {
  ScheduleKind kind = ScheduleKind::OGDConvex;
  double D = 0.0;
  double G = 0.0, sigma = 0.0, p = 2.0, mu = 0.0, H = 0.0, gamma = 0.0;
  double eta = 0.0, nu = 1.0;
  GammaRule gamma_rule = GammaRule::Infinite;

  static Schedule ogd_convex(double D, double G, double sigma, double p);
  static Schedule ogd_strong(double mu);
  static Schedule smooth_fixed(double H, double gamma, double D, double sigma, double p);
  static Schedule adagrad_scale(double eta);
  static Schedule da_adaptive_scale(double D);
  static Schedule oada_rule(double eta);                                      // gamma_t = +inf
  static Schedule oada_rule_capped(double eta, double D, double nu, double H0);  // gamma_t = D^{1-nu}/max H_s
};

// Stepsize at round t (1-based). V feeds the observed-energy kinds; h_max is
// the running max smoothness estimate for the HolderCap rule. Returns +inf
// when no branch binds (e.g. V = 0); never returns a nonpositive value.
double stepsize(const Schedule& s, long t, double V = 0.0, double h_max = 0.0);

// The cap by itself: +inf under Infinite, D^{1-nu}/h_max under HolderCap
// (+inf while h_max = 0).
double gamma_cap(const Schedule& s, double h_max);

// --- per-algorithm states and one-round updates ---------------------------
// Each update consumes the round-t gradient and produces the next iterate.
// The V-driven updates return the stepsize they used so callers can log it.

struct OgdState {
  Eigen::VectorXd x;
};
// x <- project(x - eta * g); eta must be positive and finite
void ogd_step(OgdState& s, const BallDomain& dom, const Eigen::VectorXd& g, double eta);

struct DaState {
  Eigen::VectorXd x1, x, grad_sum;
};
// grad_sum += g; x <- project(x1 - eta * grad_sum)
void da_step(DaState& s, const BallDomain& dom, const Eigen::VectorXd& g, double eta);

struct AdaGradState {
  Eigen::VectorXd x;
  double V = 0.0;
};
// V += ||g||^2; x <- project(x - (eta_scale/sqrt(V)) g); no-op while V = 0
double adagrad_step(AdaGradState& s, const BallDomain& dom, const Eigen::VectorXd& g, double eta_scale);

struct DaAdaptiveState {
  Eigen::VectorXd x1, x, grad_sum;
  double V = 0.0;
};
// V += ||g||^2; grad_sum += g; x <- project(x1 - (2D/sqrt(V)) grad_sum)
double da_adaptive_step(DaAdaptiveState& s, const BallDomain& dom, const Eigen::VectorXd& g, double D);

struct OAdaState {
  Eigen::VectorXd x, h;  // h is the hint used for the current round
  double V = 0.0;
  double h_max = 0.0;    // running max smoothness estimate for HolderCap
};
// V += ||g - h||^2; eta = min(eta/sqrt(V), gamma_cap);
// x <- project(x - eta * (g + h_next - h)); h <- h_next.
// An infinite eta with a nonzero combined direction is an invalid state and
// throws; with a zero combined direction the round is a no-op.
double oada_step(OAdaState& s, const BallDomain& dom, const Eigen::VectorXd& g,
                 const Eigen::VectorXd& h_next, const Schedule& sched);

// shared expression so replays reproduce iterates bitwise
Eigen::VectorXd oada_combined(const Eigen::VectorXd& g, const Eigen::VectorXd& h_next,
                              const Eigen::VectorXd& h);

struct OAdaRState {
  Eigen::VectorXd x, g_prev;
  double V = 0.0;
  long n = 0;    // completed rounds
  long chunk = 0;
  double D = 0.0;  // feasible set is the origin-centered ball of radius D
};
// One round of the restarting optimistic learner:
//   V <- V * [n mod chunk != 1] + ||g_n - g_{n-1}||^2, eta = sqrt(2) D / sqrt(V),
//   x <- argmin_{||x|| <= D} <2 g_n - g_{n-1}, x> + ||x - x_n||^2 / (2 eta),
//   then if (n+1) mod chunk == 1, x <- -D g_n / ||g_n|| (0 if g_n = 0).
// eta = +inf resolves to the argmin limit: the ball point minimizing the
// linear term. Returns the eta used.
double oadar_step(OAdaRState& s, const Eigen::VectorXd& g);

// --- uniform driver --------------------------------------------------------

class OnlineLearner {
 public:
  // Builds the learner for `algo` on `domain` starting at x1 (must be
  // feasible). Schedule kind must match the algorithm: t-based kinds for
  // OGD/DA, AdaGradScale for AdaGrad, DAAdaptiveScale for DAAdaptive,
  // OAdaRule for OAda. h1 seeds the first hint for OAda (default zero).
  // OAdaR instead comes from make_restarting below.
  OnlineLearner(Algo algo, const Schedule& sched, BallDomain domain, Eigen::VectorXd x1,
                std::optional<Eigen::VectorXd> h1 = std::nullopt);

  // OAdaR: origin-centered ball of radius D, chunk length >= 1.
  static OnlineLearner make_restarting(double D, int d, long chunk,
                                       std::optional<Eigen::VectorXd> x1 = std::nullopt);

  const Eigen::VectorXd& iterate() const;
  // Consumes the round gradient, returns the stepsize used (+inf on no-op
  // rounds). OAda takes the default hint h_{t+1} = g_t.
  double step(const Eigen::VectorXd& g);
  double step_with_hint(const Eigen::VectorXd& g, const Eigen::VectorXd& h_next);

  // Raises the running smoothness estimate before the next step (OAda HolderCap).
  void observe_smoothness(double H_s);

  Algo algo() const { return algo_; }
  const Schedule& schedule() const { return sched_; }
  const BallDomain& domain() const { return domain_; }
  long rounds() const { return t_; }
  double V() const;
  const Eigen::VectorXd& hint() const;  // OAda only: current h_t

 private:
  OnlineLearner(BallDomain domain);  // internal, for make_restarting
  Algo algo_;
  Schedule sched_;
  BallDomain domain_;
  long t_ = 0;
  OgdState ogd_;
  DaState da_;
  AdaGradState ada_;
  DaAdaptiveState daada_;
  OAdaState oada_;
  OAdaRState oadar_;
};

}  // namespace hoco
