#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hoco/geometry.hpp"
#include "hoco/learners.hpp"

namespace hoco {

// Complete record of one online run: everything a certificate needs to be
// re-checked after the fact. Rounds are 1-based; vectors below hold t = 1..T
// except xs, which also carries the post-update point x_{T+1}, and hints,
// which carries h_1..h_{T+1} for optimistic runs.
struct RunTrace {
  Algo algo = Algo::OGD;
  Schedule sched;
  BallDomain domain{Eigen::VectorXd::Zero(1), 1.0};
  std::string problem = "linear";
  double p = 2.0, sigma = 0.0;
  long T = 0;
  std::uint64_t seed = 0;
  long chunk = 0;  // restart period, oadar runs only

  std::vector<Eigen::VectorXd> xs;          // x_1 .. x_{T+1}
  std::vector<Eigen::VectorXd> gs;          // observed gradients
  std::vector<Eigen::VectorXd> true_grads;  // gradients without noise
  std::vector<Eigen::VectorXd> noises;
  std::vector<double> etas;
  std::vector<Eigen::VectorXd> hints;       // oada only: h_1 .. h_{T+1}

  int dim() const { return domain.dim(); }
  // largest exact-gradient norm seen; the natural Lipschitz bound for checks
  double observed_G() const {
    double g = 0.0;
    for (const auto& v : true_grads) g = std::max(g, v.norm());
    return g;
  }
};

}  // namespace hoco
