#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace lsasim {

/// SplitMix64 finaliser; used to turn structured keys into well-mixed seeds.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Keyed seed derivation. The same (master, keys...) tuple always yields the
/// same seed, and distinct tuples give statistically unrelated streams, so a
/// day's stream can be rebuilt from (master_seed, year, day, purpose) alone.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master,
                                        std::initializer_list<std::uint64_t> keys) noexcept;

/// Random stream used throughout the simulator.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard.
/// Uniform variates are built from the raw 64-bit output here instead of
/// going through std::uniform_real_distribution, whose algorithm is
/// implementation-defined, so results do not depend on the standard library.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lsasim
