// philox.cpp — Philox4x32-10 rounds and the distribution draws built on it.
#include "ecdm/philox.hpp"

#include <cmath>

#include "ecdm/errors.hpp"

namespace ecdm {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

inline std::array<std::uint32_t, 4> round_once(
    const std::array<std::uint32_t, 4>& c,
    const std::array<std::uint32_t, 2>& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mul_hi_lo(kMult0, c[0], hi0, lo0);
  mul_hi_lo(kMult1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::bijection(
    const std::array<std::uint32_t, 4>& counter,
    const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> c = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int round = 0; round < 9; ++round) {
    c = round_once(c, k);
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return round_once(c, k);
}

void Philox4x32::refill() {
  const std::array<std::uint32_t, 4> counter = {
      static_cast<std::uint32_t>(block_),
      static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_),
      static_cast<std::uint32_t>(stream_ >> 32)};
  const std::array<std::uint32_t, 2> key = {
      static_cast<std::uint32_t>(seed_),
      static_cast<std::uint32_t>(seed_ >> 32)};
  buf_ = bijection(counter, key);
  ++block_;
  buf_pos_ = 0;
}

std::uint32_t Philox4x32::next_u32() {
  if (buf_pos_ == 4) refill();
  return buf_[buf_pos_++];
}

std::uint64_t Philox4x32::next_u64() {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double Philox4x32::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Philox4x32::next_gaussian() {
  if (has_gauss_cache_) {
    has_gauss_cache_ = false;
    return gauss_cache_;
  }
  // u1 shifted into (0, 1] so log(u1) is finite.
  const double u1 =
      (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 6.283185307179586476925286766559 * u2;
  gauss_cache_ = r * std::sin(angle);
  has_gauss_cache_ = true;
  return r * std::cos(angle);
}

double Philox4x32::next_chi_squared(int df) {
  if (df < 1) {
    throw ArgumentError("chi-squared needs df >= 1");
  }
  double sum = 0.0;
  for (int i = 0; i < df; ++i) {
    const double z = next_gaussian();
    sum += z * z;
  }
  return sum;
}

}  // namespace ecdm
