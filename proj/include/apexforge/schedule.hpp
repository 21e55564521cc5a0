#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "apexforge/numeric.hpp"

namespace apexforge::schedule {

/// Base of the logarithm in the product bound and the s_d threshold.
enum class LogBase { two, natural };

std::string to_string(LogBase b);
LogBase log_base_from_string(const std::string& s);

/// Least m with C(m + r, r) > t.
std::uint64_t D(std::uint64_t r, std::uint64_t t);

struct ProductBound {
  BigInt product;  // prod_{i=1}^r D(i, t)
  BigInt bound;    // ceil(t^{1 + log r} * r!)
  bool holds = false;
};

/// Checks prod_{i<=r} D(i,t) <= t^{1+log r} r!. `holds` is decided against the
/// real right-hand side (exactly when t is a power of the log base's
/// integer counterpart, otherwise at 200-bit precision); `bound` reports its
/// ceiling.
ProductBound product_bound_check(std::uint64_t r, std::uint64_t t, LogBase base = LogBase::two);

/// Lower and upper decimal enclosure of a real value.
struct Enclosure {
  BigRational lo;
  BigRational hi;
};

struct TuranSchedule {
  unsigned d = 2;
  std::vector<std::uint64_t> part_sizes;  // s_1..s_{d-1}
  std::uint64_t S = 0;                    // e(H)
  std::uint64_t beta_cubed = 0;           // d^2 + 4d - 5
  Enclosure beta;                         // 10^-30 wide
  std::uint64_t s = 0;                    // max s_i
  std::uint64_t t = 0;
  std::uint64_t r = 0;
  std::uint64_t l = 0;
  std::uint64_t N = 0;
  std::vector<std::uint64_t> m;  // m_1..m_t
  BigInt C;
  BigInt s_d_threshold;
  LogBase log_base = LogBase::two;
};

/// Parameter schedule for the Turan construction. `edges` lists E(H) as
/// (d-1)-tuples of 1-based vertex indices; only its size enters the schedule
/// but it is validated against the part sizes. Throws InvalidInput on an
/// empty pattern or d < 2.
TuranSchedule turan_schedule(unsigned d, const std::vector<std::uint64_t>& part_sizes,
                             const std::vector<std::vector<std::uint64_t>>& edges,
                             LogBase base = LogBase::two);

struct Condition {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct ConditionReport {
  bool holds = false;
  std::vector<Condition> conditions;
};

/// Hypotheses of the independent-complete-intersection existence statement:
/// m >= 3, l + 1 <= C(t+1+m, m), and max_{2<=u<=s} psi_upper(N,u,m)/(u-1) + 1 <= r
/// (empty psi cases contribute 0; a non-applicable psi case fails the check).
ConditionReport lem12_precondition_check(std::uint64_t N, std::uint64_t m, std::uint64_t r,
                                         std::uint64_t t, std::uint64_t l, std::uint64_t s);

/// C(t+4, 3) > l, the closing inequality of the Turan parameter derivation.
bool turan_binomial_chain_holds(const TuranSchedule& sched);

struct ZarankiewiczSchedule {
  std::uint64_t S = 0;
  std::uint64_t r = 0;  // ceil(sqrt S)
  std::uint64_t m = 0;
  std::uint64_t t = 0;  // max u with 2 S u <= C(r+m+1, m) - 1
  ConditionReport feasibility;
};

ZarankiewiczSchedule zarankiewicz_schedule(std::uint64_t S, std::uint64_t m);

struct Lem14Report {
  ConditionReport report;
  BigInt threshold;  // m^S prod_{j=1}^r D(r-j+1, 2 s_1...s_{d-1} t + 1)
};

/// `sizes` is s_1..s_d (the last entry is the apex part size s_d).
Lem14Report lem14_feasible(const std::vector<std::uint64_t>& sizes, std::uint64_t t, std::uint64_t r,
                           std::uint64_t m, std::uint64_t S);

/// Degrees m_j = D(r-j+1, floor(log_p(prod n_i^{s_i})) + 1), j = 1..r, used by
/// the three-step Zarankiewicz construction.
std::vector<std::uint64_t> zarankiewicz_degrees(std::uint64_t r, std::uint64_t p,
                                                const std::vector<std::uint64_t>& n,
                                                const std::vector<std::uint64_t>& s);

/// Largest prime p with C p^S <= n; asserts n <= C (2p)^S. Throws InvalidInput
/// when no prime fits (n < C 2^S).
std::uint64_t select_prime(std::uint64_t n, std::uint64_t C, unsigned S);

nlohmann::json to_json(const TuranSchedule& s);
nlohmann::json to_json(const ZarankiewiczSchedule& s);
nlohmann::json to_json(const ConditionReport& r);

}  // namespace apexforge::schedule
