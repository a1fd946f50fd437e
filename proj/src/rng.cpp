#include "qgen/rng.hpp"

namespace qgen {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(mix64(base + kGolden) ^ (index + kGolden));
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t instance_index,
                           std::uint64_t component_index) {
  std::uint64_t s = mix64(seed + kGolden);
  s = mix64(s ^ (instance_index + kGolden));
  s = mix64(s ^ (component_index + kGolden));
  state_ = s;
}

std::uint64_t RandomSource::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

std::uint64_t RandomSource::uniform(std::uint64_t n) {
  // Lemire's nearly-divisionless method: map a 64-bit word x to
  // (x * n) >> 64 and reject the low-product values that would make the
  // buckets uneven. Deterministic and exactly uniform.
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    const std::uint64_t threshold = static_cast<std::uint64_t>(-n) % n;
    while (lo < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

bool RandomSource::coin() { return (next_u64() >> 63) != 0; }

}  // namespace qgen
