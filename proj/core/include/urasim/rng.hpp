#pragma once

#include <cstdint>
#include <random>

namespace urasim {

// splitmix64 finalizer; whitens seeds before they feed a generator.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of substream `stream_id` under `master`. Distinct ids give
/// decorrelated streams, so per-round streams stay reproducible no matter
/// in which order (or on how many threads) rounds execute.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream_id * 0xd1342543de82ef95ULL + 1));
}

inline std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t stream_id) {
  return std::mt19937_64{derive_seed(master, stream_id)};
}

}  // namespace urasim
