#include "qobjsim/common/rng.hpp"

#include <cmath>

namespace qobjsim {

namespace {

// SplitMix64 finalizer; also used to fold the key components together.
uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

ShotRng::ShotRng(uint64_t seed, uint64_t experiment, uint64_t shot) {
  uint64_t k = mix64(seed);
  k = mix64(k ^ (experiment + 0x516cc24f0149bd6bULL));
  k = mix64(k ^ (shot + 0x2545f4914f6cdd1dULL));
  state_ = k;
}

uint64_t ShotRng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double ShotRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double ShotRng::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1, u2;
  do {
    u1 = next_double();
  } while (u1 <= 0.0);
  u2 = next_double();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace qobjsim
