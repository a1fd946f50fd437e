#pragma once

#include <cstdint>

namespace qgen {

// Deterministic 64-bit generator used by every sampler in this project.
//
// Algorithm: SplitMix64 (Steele/Lea/Flood finalizer constants). The whole
// suite depends on this exact algorithm staying fixed: output files are
// byte-reproducible across platforms and compilers because nothing here
// touches <random> distributions, long double, or implementation-defined
// behavior. Do not swap in std::mt19937 / std::uniform_int_distribution;
// their streams are not portable across standard library implementations.
//
// Stream derivation: the initial state is derived from
// (seed, instance_index, component_index) by chaining the SplitMix64
// finalizer over the three words, so distinct instances and distinct
// components of one multi-component instance consume independent streams.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t instance_index = 0,
                        std::uint64_t component_index = 0);

  // Next raw 64-bit word.
  std::uint64_t next_u64();

  // Uniform integer in [0, n). Requires n >= 1. Unbiased (Lemire's
  // multiply-with-rejection on the full 64-bit word).
  std::uint64_t uniform(std::uint64_t n);

  // Fair coin: true with probability 1/2 (top bit of the next word).
  bool coin();

 private:
  std::uint64_t state_;
};

// One application of the SplitMix64 finalizer; the building block for
// derived seeds (sweeps hash (base_seed, point_index) through this).
std::uint64_t mix64(std::uint64_t z);

// Derived stream seed for substreams such as sweep points.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace qgen
