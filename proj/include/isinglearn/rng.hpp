#pragma once

#include <cstdint>
#include <random>

namespace ising {

// splitmix64 finalizer; used as a counter-based stream splitter so that
// per-trial / per-chain streams never depend on how many other streams exist.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// Derive an independent stream from (master, stream index). Adding more
/// streams later never perturbs the ones already drawn.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(master + (stream + 1) * kGolden);
}

/// Deterministic RNG wrapper. Doubles are produced from the top 53 bits so
/// results do not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  /// Fair spin in {-1, +1}.
  std::int8_t next_spin() { return (next_u64() >> 63) ? std::int8_t{1} : std::int8_t{-1}; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ising
