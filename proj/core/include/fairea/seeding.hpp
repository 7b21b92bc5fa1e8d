#pragma once

#include <cstdint>

namespace fairea {

// splitmix64 finalizer. Used to derive independent stream seeds from a
// master seed, so trial sets can be extended without reshuffling
// already-computed trials.
inline std::uint64_t split_mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  return split_mix(master ^ split_mix(stream + 0x632be59bd9b4e019ULL));
}

}  // namespace fairea
