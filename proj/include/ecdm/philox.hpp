// philox.hpp — counter-based random stream (Philox4x32-10) with distribution draws.
//
// Keyed by (seed, stream): the seed is the 64-bit key, the stream index occupies the
// upper counter words. Streams never overlap, so replication r of a simulation can draw
// from stream r and produce the same values whether replications run serially or on
// any number of workers.
#pragma once

#include <array>
#include <cstdint>

namespace ecdm {

class Philox4x32 {
 public:
  Philox4x32(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  // The raw 10-round bijection; exposed for known-answer tests.
  static std::array<std::uint32_t, 4> bijection(
      const std::array<std::uint32_t, 4>& counter,
      const std::array<std::uint32_t, 2>& key);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double next_uniform();

  // Standard normal via Box–Muller; generates pairs and caches the second value.
  double next_gaussian();

  // χ²_df as a sum of df squared standard normals.
  double next_chi_squared(int df);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int buf_pos_ = 4;
  double gauss_cache_ = 0.0;
  bool has_gauss_cache_ = false;
};

}  // namespace ecdm
