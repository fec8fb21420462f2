#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace ofuglb {

using Rng = std::mt19937_64;

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a, used to fold stream labels into a seed.
constexpr std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Derives an independent stream seed from (base_seed, repeat_id, label).
/// Stream i of an experiment is Rng(derive_seed(base, i, label)).
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t repeat_id,
                                    std::string_view label) {
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ repeat_id);
  h = mix64(h ^ hash_label(label));
  return h;
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace ofuglb
