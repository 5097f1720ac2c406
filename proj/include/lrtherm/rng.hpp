#pragma once

#include <cstdint>
#include <utility>

namespace lrtherm::rng {

// Stateless mixer. All randomness in the project derives from splitmix64 so
// that ensembles reproduce bit for bit regardless of evaluation order,
// partitioning, or worker count.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seed for one ensemble sample. Extending an ensemble never changes the
// couplings of earlier samples.
inline std::uint64_t sample_seed(std::uint64_t base, std::uint64_t sample) {
  return base ^ splitmix64(sample);
}

// Map to [0, 1) with 53 significant bits.
inline double to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Counter-based uniform draw attached to the unordered pair (i, j).
inline double pair_uniform(std::uint64_t seed, int i, int j) {
  if (i > j) std::swap(i, j);
  std::uint64_t h = splitmix64(seed ^ (0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(i) + 1)));
  h = splitmix64(h ^ (0xc2b2ae3d27d4eb4full * (static_cast<std::uint64_t>(j) + 1)));
  return to_unit(h);
}

}  // namespace lrtherm::rng
