#include "apexforge/numeric.hpp"

#include <stdexcept>

namespace apexforge {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i stays exact: acc is C(n-k+i-1, i-1).
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::uint64_t>(acc);
}

BigInt big_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= (n - k + i);
    acc /= i;
  }
  return acc;
}

BigInt big_factorial(std::uint64_t n) {
  BigInt acc = 1;
  for (std::uint64_t i = 2; i <= n; ++i) acc *= i;
  return acc;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && acc > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
    acc *= base;
  }
  return acc;
}

std::uint64_t integer_root_floor(std::uint64_t n, unsigned k) {
  if (k == 0) throw std::invalid_argument("zeroth root");
  if (k == 1 || n < 2) return n;
  std::uint64_t lo = 1, hi = std::uint64_t{1} << (64 / k + 1);
  // Invariant: lo^k <= n, hi^k > n.
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    auto pw = checked_pow(mid, k);
    if (pw && *pw <= n)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

BigInt integer_root_floor(const BigInt& n, unsigned k) {
  if (k == 0) throw std::invalid_argument("zeroth root");
  if (n < 0) throw std::invalid_argument("root of a negative number");
  if (k == 1 || n < 2) return n;
  BigInt lo = 1;
  BigInt hi = BigInt(1) << (msb(n) / k + 2);
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, k) <= n)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

BigInt integer_root_ceil(const BigInt& n, unsigned k) {
  BigInt f = integer_root_floor(n, k);
  return boost::multiprecision::pow(f, k) == n ? f : f + 1;
}

}  // namespace apexforge
