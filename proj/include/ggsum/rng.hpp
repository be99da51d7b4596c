#ifndef GGSUM_RNG_HPP
#define GGSUM_RNG_HPP

#include <array>
#include <cstdint>

namespace ggsum {

/// Counter-based pseudo-random stream: Philox-4x32 with 10 rounds.
///
/// A stream is addressed by (master_seed, stream_id); the 64-bit master seed
/// forms the cipher key and the stream id occupies the upper half of the
/// 128-bit counter, so distinct streams are distinct counter blocks of the
/// same keyed permutation.  Output is a deterministic function of
/// (master_seed, stream_id, draw index), stable across releases; the
/// generator name is recorded in CSV metadata as "philox4x32-10".
///
/// One stream must not be shared across threads without external
/// coordination; distinct streams may be used concurrently.
class Philox4x32 {
 public:
  Philox4x32(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1); 53 random bits.
  double next_unit();

  /// Standard normal draw (Box-Muller, cosine branch; consumes two uniforms).
  double next_normal();

  static constexpr const char* name() { return "philox4x32-10"; }

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_;
  int word_ = 4;  // consumed words in block_
};

}  // namespace ggsum

#endif
