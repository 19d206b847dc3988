#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace xorpso {

// Seedable generator shared by every stochastic component.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The std:: distributions are implementation-defined, so all
// conversions to doubles, indices and Gaussians are done here by hand.
// Two builds on different standard libraries produce identical draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform index in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  // Standard normal via Box-Muller; consumes exactly two draws per call.
  double normal();

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer over (seed, stream). Gives independent-looking seeds
// for the separate streams of one run (split, seeding, optimizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace xorpso
