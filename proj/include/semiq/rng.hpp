#pragma once

#include <cstdint>
#include <string_view>

namespace semiq {

/// Splittable counter-based random stream.
///
/// Every stream is identified by a 64-bit key; outputs are a keyed mix of
/// (key, counter), so a stream is a pure function of its key and how many
/// draws were taken. Child streams are derived from (key, tag) without
/// consuming any state of the parent, which makes trial-level parallelism
/// reproducible: trial i of a sweep always sees the same stream regardless
/// of execution order.
class SplitStream {
 public:
  explicit SplitStream(std::uint64_t seed) : key_(mix64(seed ^ kSeedSalt)) {}

  /// Derive an independent child stream. Pure: does not advance this stream.
  SplitStream derive(std::uint64_t tag) const {
    return SplitStream(key_ ^ mix64(tag ^ kDeriveSalt), 0);
  }
  SplitStream derive(std::string_view label) const { return derive(fnv1a(label)); }
  SplitStream derive(std::string_view label, std::uint64_t index) const {
    return derive(fnv1a(label)).derive(index ^ kIndexSalt);
  }

  std::uint64_t next_u64() {
    counter_ += kGamma;
    return mix64(key_ ^ counter_);
  }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Fair coin.
  int bit() { return static_cast<int>(next_u64() >> 63); }

  /// Uniform index in [0, n). Lemire multiply-shift; bias is < 2^-64 * n and
  /// irrelevant at the trial counts used here.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  static constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return h;
  }

 private:
  SplitStream(std::uint64_t key, int) : key_(key) {}

  // SplitMix64 finalizer; full avalanche on 64 bits.
  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  static constexpr std::uint64_t kSeedSalt = 0x5eed5a17c0ffee01ull;
  static constexpr std::uint64_t kDeriveSalt = 0xd1e55a1b0b5ca1eull;
  static constexpr std::uint64_t kIndexSalt = 0x1d0e55a17ab1e5ull;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace semiq
