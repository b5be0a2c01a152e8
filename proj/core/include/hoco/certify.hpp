#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hoco/trace.hpp"

namespace hoco {

// Constant in front of the heavy-tail noise term of the per-step bound:
// (4p - 4)^{p-1} / p^p for p in (1,2]. Equals 1 at p = 2.
double c_of_p(double p);

// Every check below evaluates a pathwise inequality LHS <= RHS on recorded
// data. Nothing is statistical: a violation beyond floating-point tolerance
// means the inequality (or the implementation that claims it) is wrong.
struct Bound {
  double lhs = 0.0, rhs = 0.0;
  double slack() const { return rhs - lhs; }
  double rel_slack() const {
    return slack() / std::max({1.0, std::abs(lhs), std::abs(rhs)});
  }
};

// One projected-gradient round against comparator x:
//   <g, x_t - x> <= (||x_t - x||^2 - ||x_next - x||^2) / (2 eta)
//                   + eta G^2 + c_of_p(p) eta^{p-1} ||noise||^p diam^{2-p}.
// G must dominate the exact gradient norms; diam is the domain diameter.
Bound ogd_step_bound(const Eigen::VectorXd& x_t, const Eigen::VectorXd& x_next,
                     const Eigen::VectorXd& g, const Eigen::VectorXd& noise, double eta,
                     const Eigen::VectorXd& x, double diam, double G, double p);

// Lazy-averaging run with nonincreasing stepsizes, whole horizon:
//   sum_t <g_t, x_t - x> <= ||x - x_1||^2 / (2 eta_T)
//     + sum_t [eta_{t-1} G^2 + c_of_p(p) eta_{t-1}^{p-1} ||noise_t||^p diam^{2-p}],
// with eta_0 taken as eta_1. Throws if the trace is not a da run.
Bound da_run_bound(const RunTrace& tr, const Eigen::VectorXd& x, double G);

// Observed-energy stepsize run, two strengths (eta is the schedule scale):
//   tight:  sum <g_t, x_t - x> <= (diam^2/(2 eta) + eta) sqrt(sum ||g_t||^2)
//   split:  ... <= sqrt(2) (diam^2/(2 eta) + eta)
//                  [sqrt(sum ||true_t||^2) + (sum ||noise_t||^p)^{1/p}]
Bound adagrad_run_bound_tight(const RunTrace& tr, const Eigen::VectorXd& x);
Bound adagrad_run_bound_split(const RunTrace& tr, const Eigen::VectorXd& x);

// Optimistic run with hints h_t and caps gamma_t (nonincreasing, +inf fine):
//   sum <g_t, x_t - x> <= diam^2/(2 gamma_T)
//     + (diam^2/(2 eta) + 2 eta) sqrt(sum ||g_t - h_t||^2)
//     - sum_{t<T} ||x_{t+1} - x_t||^2 / (4 gamma_t)
//     + <h_1, x_1 - x> - <h_{T+1}, x_{T+1} - x>.
Bound oada_run_bound(const RunTrace& tr, const Eigen::VectorXd& x, const std::vector<double>& gammas);

// Gamma series implied by the trace's schedule (constant caps only).
std::vector<double> gammas_from_schedule(const Schedule& sched, long T);

// Restarting optimistic run over an origin-centered ball of radius D, one
// comparator v_k per chunk:
//   sum_{chunk k} <g_n, x_n - v_k> <= b_k + 3 sqrt(2) D sqrt(sum_chunk ||g_n - g_{n-1}||^2)
// where b_k = <g_{(k-1)T}, x_{(k-1)T+1} - v_k> is the carry-over through the
// restart point (zero for the first chunk) and must itself be <= 0.
struct ChunkBounds {
  std::vector<Bound> chunk;     // per-chunk inequality
  std::vector<double> boundary; // b_k values, expected <= 0
};
ChunkBounds oadar_chunk_bounds(const RunTrace& tr, const std::vector<Eigen::VectorXd>& vks);

inline constexpr double kCertTol = 1e-9;

struct CertCheck {
  std::string name;
  long count = 0;
  double min_rel_slack = kInf;
  bool pass = true;
};
struct CertReport {
  std::vector<CertCheck> checks;
  double min_rel_slack = kInf;
  bool pass = true;
};

// Runs every certificate that applies to the trace against each comparator
// (per-step for ogd, run-level otherwise). G < 0 means "use the largest
// exact-gradient norm in the trace". da-ada has no certificate and throws;
// oadar needs per-chunk comparators, so it gets its own entry point.
CertReport certify_trace(const RunTrace& tr, const std::vector<Eigen::VectorXd>& comparators,
                         double G = -1.0);
CertReport certify_oadar_trace(const RunTrace& tr,
                               const std::vector<std::vector<Eigen::VectorXd>>& comparator_tuples);

std::string format_report(const CertReport& report);

}  // namespace hoco
