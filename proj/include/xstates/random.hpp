#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "xstates/types.hpp"

namespace xstates {

/// Seeded generator shared by every sampler; one instance per trial.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }

  /// Centered complex normal with E|z|^2 = scale^2.
  Scalar complex_normal(double scale = 1.0) {
    const double s = scale / std::sqrt(2.0);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
  }

  bool coin() { return (engine_() & 1U) != 0; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace xstates
