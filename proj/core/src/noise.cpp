#include "hoco/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hoco {

TailSpec::TailSpec(double p_, double sigma_) : p(p_), sigma(sigma_) {
  if (!(p > 1.0) || !(p <= 2.0)) throw std::invalid_argument("TailSpec: p must lie in (1,2]");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("TailSpec: sigma must be finite and >= 0");
}

NoiseModel NoiseModel::none() { return NoiseModel{NoiseKind::None, TailSpec{2.0, 0.0}, 0.0}; }

NoiseModel NoiseModel::gaussian(double sigma) {
  // the light-tailed reference model; only valid against a p = 2 budget
  return NoiseModel{NoiseKind::Gaussian, TailSpec{2.0, sigma}, 0.0};
}

NoiseModel NoiseModel::pareto_radial(const TailSpec& spec) {
  return pareto_radial(spec, 0.5 * (spec.p + 2.0));
}

NoiseModel NoiseModel::pareto_radial(const TailSpec& spec, double index) {
  if (spec.sigma > 0.0 && !(index > spec.p && index < 2.0))
    throw std::invalid_argument("NoiseModel: ParetoRadial needs p < index < 2");
  return NoiseModel{NoiseKind::ParetoRadial, spec, index};
}

double pareto_scale(const TailSpec& spec, double index) {
  if (spec.sigma == 0.0) return 0.0;
  if (!(index > spec.p)) throw std::invalid_argument("pareto_scale: index must exceed p");
  // solve a * x_m^p / (a - p) = sigma^p
  return spec.sigma * std::pow((index - spec.p) / index, 1.0 / spec.p);
}

Eigen::VectorXd sample_noise(const NoiseModel& model, int d, Rng& rng) {
  if (d <= 0) throw std::invalid_argument("sample_noise: d must be positive");
  switch (model.kind) {
    case NoiseKind::None:
      return Eigen::VectorXd::Zero(d);
    case NoiseKind::Gaussian: {
      if (model.spec.sigma == 0.0) return Eigen::VectorXd::Zero(d);
      // per-coordinate std sigma/sqrt(d) makes E||eps||^2 = sigma^2
      return rng.normal_vector(d) * (model.spec.sigma / std::sqrt(static_cast<double>(d)));
    }
    case NoiseKind::ParetoRadial: {
      if (model.spec.sigma == 0.0) return Eigen::VectorXd::Zero(d);
      // direction first, then magnitude (normative draw order)
      const Eigen::VectorXd dir = rng.sphere_vector(d);
      const double r = rng.pareto(pareto_scale(model.spec, model.pareto_index), model.pareto_index);
      return r * dir;
    }
  }
  throw std::logic_error("sample_noise: unknown kind");
}

double estimate_p_moment(const std::vector<Eigen::VectorXd>& samples, double p, int blocks) {
  const std::size_t n = samples.size();
  if (n == 0) throw std::invalid_argument("estimate_p_moment: no samples");
  if (blocks < 1 || static_cast<std::size_t>(blocks) > n)
    throw std::invalid_argument("estimate_p_moment: blocks must be in [1, #samples]");
  std::vector<double> means(blocks);
  for (int b = 0; b < blocks; ++b) {
    const std::size_t lo = n * static_cast<std::size_t>(b) / blocks;
    const std::size_t hi = n * static_cast<std::size_t>(b + 1) / blocks;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += std::pow(samples[i].norm(), p);
    means[b] = acc / static_cast<double>(hi - lo);
  }
  std::sort(means.begin(), means.end());
  if (blocks % 2 == 1) return means[blocks / 2];
  return 0.5 * (means[blocks / 2 - 1] + means[blocks / 2]);
}

double pareto_moment_quadrature(double scale, double index, double p) {
  if (scale == 0.0) return 0.0;
  if (!(index > p)) throw std::invalid_argument("pareto_moment_quadrature: index must exceed p");
  // E R^p = integral_{x_m}^inf r^p a x_m^a r^{-a-1} dr. Substituting
  // r = x_m v^{-k} turns this into a * x_m^p * k * v^{k(a-p)-1} on [0,1];
  // k = ceil(6/(a-p)) keeps the exponent in [5,7) so Simpson converges fast.
  const double gap = index - p;
  const double k = std::ceil(6.0 / gap);
  const double expo = k * gap - 1.0;
  const double coef = index * std::pow(scale, p) * k;
  const auto f = [&](double v) { return v <= 0.0 ? 0.0 : coef * std::pow(v, expo); };
  const int n = 1 << 15;  // panels, even
  const double h = 1.0 / n;
  // composite Simpson with Kahan summation
  double sum = f(0.0) + f(1.0), comp = 0.0;
  const auto add = [&](double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  for (int i = 1; i < n; ++i) add((i % 2 == 1 ? 4.0 : 2.0) * f(i * h));
  return sum * h / 3.0;
}

}  // namespace hoco
