#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace apexforge {

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Engine seed for stream `stream_id` of master seed `seed`:
///   splitmix64(seed ^ splitmix64(stream_id + 0x9e3779b97f4a7c15)).
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_id);

/// Deterministic random stream: std::mt19937_64 seeded per
/// derive_stream_seed. Both algorithms are fixed by the C++ standard and
/// SplitMix64's definition, so outputs are bit-identical across platforms.
/// Bounded draws use rejection sampling rather than
/// std::uniform_int_distribution, whose output is implementation-defined.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+splitmix64-streams";

  Rng(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Stream-id layout used by the construction pipelines:
/// bits 48..63 stage tag, bits 32..47 part index, bits 0..31 attempt.
constexpr std::uint64_t stream_id(std::uint16_t stage, std::uint16_t part,
                                  std::uint32_t attempt) {
  return (std::uint64_t{stage} << 48) | (std::uint64_t{part} << 32) | attempt;
}

}  // namespace apexforge
