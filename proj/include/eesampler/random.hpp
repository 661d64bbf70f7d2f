#pragma once

#include <cstdint>
#include <random>

namespace eesampler {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of replication `run_index` under `master_seed`.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed,
                                    std::uint64_t run_index) noexcept {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(~run_index));
}

/// Independent engine for stream `stream` of a run seeded by `seed`.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(seed >> 32)};
  return Rng(seq);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace eesampler
