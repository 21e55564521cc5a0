#include "apexforge/rng.hpp"

namespace apexforge {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_id) {
  return splitmix64(seed ^ splitmix64(stream_id + 0x9e3779b97f4a7c15ULL));
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream_id) : engine_(derive_stream_seed(seed, stream_id)) {}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Largest multiple of bound that fits, so the accepted range is unbiased.
  const std::uint64_t limit = std::uint64_t(0) - (std::uint64_t(0) - bound) % bound;
  for (;;) {
    std::uint64_t x = engine_();
    if (limit == 0 || x < limit) return x % bound;
  }
}

}  // namespace apexforge
