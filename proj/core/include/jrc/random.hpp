#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace jrc {

using Rng = std::mt19937_64;

/// Mixes a master seed with integer tags into an independent stream seed.
/// Used to give every (node, channel, sub-carrier, purpose) its own stream so
/// results never depend on evaluation order or worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(master);
  for (std::uint64_t t : tags) h = mix(h ^ mix(t));
  return h;
}

inline Rng make_rng(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
  return Rng(derive_seed(master, tags));
}

/// Draws a fresh 64-bit seed from an existing stream.
inline std::uint64_t split_seed(Rng& rng) { return rng(); }

}  // namespace jrc
