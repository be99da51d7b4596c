#include "ggsum/rng.hpp"

#include <cmath>

namespace ggsum {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;  // golden ratio
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;  // sqrt(3) - 1

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
  const std::uint64_t p = std::uint64_t(a) * std::uint64_t(b);
  hi = std::uint32_t(p >> 32);
  lo = std::uint32_t(p);
}

}  // namespace

Philox4x32::Philox4x32(std::uint64_t master_seed, std::uint64_t stream_id) {
  key_ = {std::uint32_t(master_seed), std::uint32_t(master_seed >> 32)};
  counter_ = {0u, 0u, std::uint32_t(stream_id), std::uint32_t(stream_id >> 32)};
}

void Philox4x32::refill() {
  std::uint32_t c0 = counter_[0], c1 = counter_[1], c2 = counter_[2],
                c3 = counter_[3];
  std::uint32_t k0 = key_[0], k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mul_hi_lo(kPhiloxM0, c0, hi0, lo0);
    mul_hi_lo(kPhiloxM1, c2, hi1, lo1);
    const std::uint32_t n0 = hi1 ^ c1 ^ k0;
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ c3 ^ k1;
    const std::uint32_t n3 = lo0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  block_ = {c0, c1, c2, c3};
  word_ = 0;
  // bump the 64-bit block index (low half of the counter)
  if (++counter_[0] == 0u) ++counter_[1];
}

std::uint64_t Philox4x32::next_u64() {
  if (word_ >= 4) refill();
  const std::uint64_t lo = block_[word_];
  const std::uint64_t hi = block_[word_ + 1];
  word_ += 2;
  return lo | (hi << 32);
}

double Philox4x32::next_unit() {
  const std::uint64_t bits = next_u64() >> 11;
  return (double(bits) + 0.5) * 0x1.0p-53;
}

double Philox4x32::next_normal() {
  const double u1 = next_unit();
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace ggsum
