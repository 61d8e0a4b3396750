#pragma once

#include <cstdint>

namespace qobjsim {

/// Deterministic per-shot random stream. Each (seed, experiment, shot)
/// triple is mixed into an independent key, so experiments and shots can
/// run in any order (or in parallel) without changing the draws.
class ShotRng {
public:
  ShotRng(uint64_t seed, uint64_t experiment, uint64_t shot);

  uint64_t next_u64();

  /// Uniform in [0, 1).
  double next_double();

  /// Standard normal (Box-Muller).
  double next_gaussian();

  /// true with probability p.
  bool bernoulli(double p) { return next_double() < p; }

private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qobjsim
