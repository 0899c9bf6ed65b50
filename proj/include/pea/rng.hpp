#pragma once

#include <cstdint>

namespace pea {

// Counter-based substream RNG. Every uniform draw is a pure function of
// (master seed, stream coordinates), so shot counts and worker counts can
// change without perturbing any other draw.
//
// The mixer is the SplitMix64 finalizer, applied once per coordinate.

namespace detail {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

// Collapse a coordinate tuple into a 64-bit key.
constexpr std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  return detail::splitmix64(a ^ (detail::splitmix64(b) + detail::kGolden));
}

constexpr std::uint64_t mix_key(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix_key(mix_key(a, b), c);
}

constexpr std::uint64_t mix_key(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                std::uint64_t d) {
  return mix_key(mix_key(a, b, c), d);
}

// Uniform double in [0, 1) from the top 53 bits of the mixed key.
constexpr double uniform01(std::uint64_t key) {
  return static_cast<double>(detail::splitmix64(key) >> 11) * 0x1.0p-53;
}

// One Bernoulli draw for the (shot, layer, channel) substream.
inline bool channel_insertion_draw(std::uint64_t seed, std::uint64_t shot, std::uint64_t layer,
                                   std::uint64_t channel, double insert_probability) {
  return uniform01(mix_key(seed, shot, layer, channel)) < insert_probability;
}

}  // namespace pea
