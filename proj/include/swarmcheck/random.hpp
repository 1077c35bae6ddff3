#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace swarmcheck {

/// Every stochastic component draws from this engine. Its output sequence is
/// fixed by the standard, so runs reproduce across hosts for the same build.
using Rng = std::mt19937_64;
inline constexpr std::string_view kPrngName = "mt19937_64";

/// splitmix64 finalizer; derives independent sub-seeds from one run seed.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Named sub-streams of a run seed.
enum class Stream : std::uint64_t { Scenario = 1, Dynamics = 2, Coverage = 3 };

inline Rng make_rng(std::uint64_t seed, Stream stream) {
  return Rng(mix_seed(seed, static_cast<std::uint64_t>(stream)));
}

}  // namespace swarmcheck
