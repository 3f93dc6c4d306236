#pragma once

#include <array>
#include <cstdint>

namespace gravidec {

/// Philox4x32-10 block function (Salmon et al., SC'11): a keyed bijection on
/// 128-bit counters.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Seed of the i-th independent stream of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Counter-based stream: the n-th output depends only on (seed, n), so
/// streams can be generated in any order on any thread.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed);

  std::uint32_t next_u32();
  /// Uniform on (0, 1].
  double uniform();
  /// Standard normal (Box-Muller).
  double normal();

private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gravidec
