#pragma once

#include <vector>

#include <Eigen/Core>

#include "hoco/rng.hpp"

namespace hoco {

// Moment budget for gradient noise: E ||eps||^p <= sigma^p with p in (1,2].
// sigma = 0 means noiseless regardless of p.
struct TailSpec {
  double p;
  double sigma;
  TailSpec(double p_, double sigma_);
};

enum class NoiseKind { None, Gaussian, ParetoRadial };

// Zero-mean noise generators calibrated so the p-th moment budget holds with
// equality: E ||eps||^p = sigma^p exactly. Gaussian is the p = 2 model;
// ParetoRadial (uniform direction times Pareto magnitude) is the genuinely
// heavy-tailed one and requires p < tail index < 2, so its p-th moment is
// finite but its variance is not.
struct NoiseModel {
  NoiseKind kind = NoiseKind::None;
  TailSpec spec{2.0, 0.0};
  double pareto_index = 0.0;  // tail index a, ParetoRadial only

  static NoiseModel none();
  static NoiseModel gaussian(double sigma);
  static NoiseModel pareto_radial(const TailSpec& spec);                 // a = (p+2)/2
  static NoiseModel pareto_radial(const TailSpec& spec, double index);
};

// Scale x_m that makes a Pareto(x_m, a) magnitude satisfy E R^p = sigma^p,
// using E R^p = a x_m^p / (a - p) for a > p. sigma = 0 gives 0.
double pareto_scale(const TailSpec& spec, double index);

Eigen::VectorXd sample_noise(const NoiseModel& model, int d, Rng& rng);

// Median of B block means of ||sample||^p; the heavy-tail-proof estimator of
// the p-th moment. blocks must be in [1, #samples]; even counts average the
// two middle blocks.
double estimate_p_moment(const std::vector<Eigen::VectorXd>& samples, double p, int blocks = 20);

// Deterministic quadrature for E R^p, R ~ Pareto(scale, a), used as an
// independent check on pareto_scale. Substitutes r = scale * v^{-k} with k
// chosen to flatten the tail, then composite Simpson on [0,1]; accurate to
// well under 1e-10 relative for the index ranges used here.
double pareto_moment_quadrature(double scale, double index, double p);

}  // namespace hoco
