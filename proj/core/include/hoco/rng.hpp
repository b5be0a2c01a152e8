#pragma once

#include <cstdint>
#include <Eigen/Core>

namespace hoco {

// Deterministic counter-style generator. Everything random in this library is
// a pure function of a 64-bit seed through this engine, so reruns with the
// same flags reproduce outputs byte for byte on any platform. We deliberately
// avoid <random> distributions: their output is implementation-defined.
//
// Engine: splitmix64. state advances by the 64-bit golden ratio; output is
// the murmur-style finalizer below. All constants are normative.

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Independent stream for run #index under a master seed. Streams for
// different indices are as good as unrelated.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + kGolden64 * (index + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kGolden64;
    return mix64(state_);
  }

  // uniform on [0,1): top 53 bits scaled by 2^-53
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0,1], for logs and inverse power laws
  double uniform_pos() { return 1.0 - uniform(); }

  // uniform on [lo,hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller, cosine branch only. One value costs two uniforms.
  double normal();

  // Box-Muller pairs in order (cos, sin), last odd slot uses the cos branch.
  Eigen::VectorXd normal_vector(int d);

  // uniform on the unit sphere: normalized Gaussian vector
  Eigen::VectorXd sphere_vector(int d);

  // Pareto with scale x_m > 0 and tail index a > 0: x_m * U^{-1/a}, U in (0,1]
  double pareto(double scale, double index) ;

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

inline Rng make_stream(std::uint64_t master, std::uint64_t index) {
  return Rng(derive_seed(master, index));
}

}  // namespace hoco
