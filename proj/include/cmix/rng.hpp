#pragma once
// Counter-based random number generation (Philox-4x32-10).
//
// Streams are pure functions of (seed, stream_id, counter): any draw can be
// regenerated independently of worker count or draw order, which is what makes
// the parallel Monte Carlo estimators replayable.
#include <array>
#include <cstdint>

#include "cmix/angle.hpp"

namespace cmix {

struct RngStreamSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  // Derive a child stream; used to give each Monte Carlo cell its own stream.
  RngStreamSpec child(std::uint64_t index) const {
    return {seed, stream_id * 0x9E3779B97F4A7C15ULL + index + 1};
  }
};

namespace detail {

inline void philox_round(std::array<std::uint32_t, 4>& ctr, std::array<std::uint32_t, 2>& key) {
  constexpr std::uint64_t kMul0 = 0xD2511F53ULL;
  constexpr std::uint64_t kMul1 = 0xCD9E8D57ULL;
  const std::uint64_t p0 = kMul0 * ctr[0];
  const std::uint64_t p1 = kMul1 * ctr[2];
  const std::array<std::uint32_t, 4> next = {
      static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
      static_cast<std::uint32_t>(p1),
      static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
      static_cast<std::uint32_t>(p0)};
  ctr = next;
  key[0] += 0x9E3779B9U;  // Weyl constants
  key[1] += 0xBB67AE85U;
}

inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                                  std::array<std::uint32_t, 2> key) {
  for (int i = 0; i < 10; ++i) philox_round(ctr, key);
  return ctr;
}

}  // namespace detail

// One 128-bit block per counter value; exposes two doubles in [0, 2pi).
class PhaseStream {
 public:
  explicit PhaseStream(RngStreamSpec spec) : spec_(spec) {}

  // The n-th phase pair of the stream (random access, stateless).
  PhasePair phase_pair(std::uint64_t n) const {
    const auto block = detail::philox4x32_10(
        {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32),
         static_cast<std::uint32_t>(spec_.stream_id), static_cast<std::uint32_t>(spec_.stream_id >> 32)},
        {static_cast<std::uint32_t>(spec_.seed), static_cast<std::uint32_t>(spec_.seed >> 32)});
    return {kTwoPi * to_unit(block[0], block[1]), kTwoPi * to_unit(block[2], block[3])};
  }

  // Uniform double in [0, 1) from the n-th block's first lane.
  double uniform(std::uint64_t n) const {
    const auto block = detail::philox4x32_10(
        {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32),
         static_cast<std::uint32_t>(spec_.stream_id), static_cast<std::uint32_t>(spec_.stream_id >> 32)},
        {static_cast<std::uint32_t>(spec_.seed), static_cast<std::uint32_t>(spec_.seed >> 32)});
    return to_unit(block[0], block[1]);
  }

  RngStreamSpec spec() const { return spec_; }

 private:
  // 53 random bits -> double in [0,1).
  static double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 21) ^ (lo >> 11);
    return static_cast<double>(bits & ((1ULL << 53) - 1)) * 0x1.0p-53;
  }

  RngStreamSpec spec_;
};

}  // namespace cmix
