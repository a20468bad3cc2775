#pragma once

#include <cstdint>
#include <random>

namespace rfsvm {

// splitmix64 finalizer. Bijective on 64-bit words, so distinct inputs keep
// distinct outputs; good enough to decorrelate nearby seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent random streams derived from one top-level seed. Each consumer
// of randomness gets its own stream so adding draws to one stage never
// perturbs another.
enum class SeedStream : std::uint64_t {
  feature_map = 1,
  landmarks = 2,
  solver = 3,
  verify = 4,
  trial = 5,
};

inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

inline std::uint64_t split_seed(std::uint64_t master, SeedStream stream) {
  return split_seed(master, static_cast<std::uint64_t>(stream));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

}  // namespace rfsvm
