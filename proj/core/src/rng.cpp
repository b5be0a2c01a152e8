#include "hoco/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hoco {

double Rng::normal() {
  const double u1 = uniform_pos();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::VectorXd Rng::normal_vector(int d) {
  if (d <= 0) throw std::invalid_argument("normal_vector: d must be positive");
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; i += 2) {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    v[i] = r * std::cos(ang);
    if (i + 1 < d) v[i + 1] = r * std::sin(ang);
  }
  return v;
}

Eigen::VectorXd Rng::sphere_vector(int d) {
  for (;;) {
    Eigen::VectorXd v = normal_vector(d);
    const double n = v.norm();
    if (n > 0.0 && std::isfinite(n)) return v / n;
    // astronomically unlikely; redraw keeps the map well-defined
  }
}

double Rng::pareto(double scale, double index) {
  if (scale < 0.0 || index <= 0.0) throw std::invalid_argument("pareto: need scale >= 0, index > 0");
  if (scale == 0.0) return 0.0;
  return scale * std::pow(uniform_pos(), -1.0 / index);
}

}  // namespace hoco
