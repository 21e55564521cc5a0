#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

namespace apexforge {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient; throws std::overflow_error beyond 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

BigInt big_binomial(std::uint64_t n, std::uint64_t k);

BigInt big_factorial(std::uint64_t n);

/// base^exp, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);

/// Largest x with x^k <= n.
std::uint64_t integer_root_floor(std::uint64_t n, unsigned k);

/// Smallest x with x^k >= n, for arbitrary-precision n.
BigInt integer_root_ceil(const BigInt& n, unsigned k);

/// Largest x with x^k <= n, for arbitrary-precision n.
BigInt integer_root_floor(const BigInt& n, unsigned k);

}  // namespace apexforge
