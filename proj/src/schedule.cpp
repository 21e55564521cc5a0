#include "apexforge/schedule.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "apexforge/error.hpp"
#include "apexforge/gf.hpp"
#include "apexforge/regseq.hpp"

namespace apexforge::schedule {

namespace {

// ~266 bits of mantissa.
using Real = boost::multiprecision::cpp_bin_float_100;

Real log_in(const Real& x, LogBase base) {
  using boost::multiprecision::log;
  return base == LogBase::two ? log(x) / log(Real(2)) : log(x);
}

BigInt ceil_real(const Real& x) {
  using boost::multiprecision::ceil;
  return static_cast<BigInt>(ceil(x));
}

std::string rational_string(const BigRational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::string big_string(const BigInt& v) { return v.str(); }

// floor(q * 10^digits) written with a decimal point; q >= 0.
std::string decimal_string(const BigRational& q, unsigned digits) {
  BigInt scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  const BigInt scaled = numerator(q) * scale / denominator(q);
  std::string s = scaled.str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return s;
}

bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

unsigned log2_exact(std::uint64_t x) {
  unsigned k = 0;
  while (x > 1) {
    x >>= 1;
    ++k;
  }
  return k;
}

BigInt big_pow(const BigInt& b, std::uint64_t e) {
  BigInt out = 1;
  for (std::uint64_t i = 0; i < e; ++i) out *= b;
  return out;
}

}  // namespace

std::string to_string(LogBase b) { return b == LogBase::two ? "2" : "e"; }

LogBase log_base_from_string(const std::string& s) {
  if (s == "2" || s == "two") return LogBase::two;
  if (s == "e" || s == "natural") return LogBase::natural;
  throw InvalidInput("log base must be '2' or 'e', got '" + s + "'");
}

std::uint64_t D(std::uint64_t r, std::uint64_t t) {
  if (r == 0) throw InvalidInput("D(r, t) needs r >= 1");
  const BigInt target = t;
  auto exceeds = [&](std::uint64_t m) { return big_binomial(m + r, r) > target; };
  if (exceeds(0)) return 0;
  // C(m + r, r) >= m + 1, so m = t always exceeds.
  std::uint64_t lo = 0, hi = 1;
  while (hi < t && !exceeds(hi)) {
    lo = hi;
    hi = std::min<std::uint64_t>(t, hi * 2);
  }
  // invariant: !exceeds(lo), exceeds(hi)
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (exceeds(mid) ? hi : lo) = mid;
  }
  return hi;
}

ProductBound product_bound_check(std::uint64_t r, std::uint64_t t, LogBase base) {
  if (r == 0 || t == 0) throw InvalidInput("product_bound_check needs r, t >= 1");
  ProductBound out;
  out.product = 1;
  for (std::uint64_t i = 1; i <= r; ++i) out.product *= D(i, t);
  const BigInt fact = big_factorial(r);

  std::optional<BigInt> exact;
  if (r == 1) {
    exact = BigInt(t) * fact;
  } else if (base == LogBase::two && is_power_of_two(r)) {
    exact = big_pow(BigInt(t), 1 + log2_exact(r)) * fact;
  } else if (base == LogBase::two && is_power_of_two(t)) {
    // t^{log2 r} = r^{log2 t}
    exact = BigInt(t) * big_pow(BigInt(r), log2_exact(t)) * fact;
  }
  if (exact) {
    out.bound = *exact;
    out.holds = out.product <= *exact;
    return out;
  }
  using boost::multiprecision::pow;
  const Real value = pow(Real(t), 1 + log_in(Real(r), base)) * Real(fact);
  out.bound = ceil_real(value);
  out.holds = Real(out.product) <= value;
  return out;
}

TuranSchedule turan_schedule(unsigned d, const std::vector<std::uint64_t>& part_sizes,
                             const std::vector<std::vector<std::uint64_t>>& edges, LogBase base) {
  if (d < 2) throw InvalidInput("turan_schedule needs d >= 2");
  if (part_sizes.size() != d - 1)
    throw InvalidInput("expected " + std::to_string(d - 1) + " part sizes");
  for (auto s : part_sizes)
    if (s == 0) throw InvalidInput("part sizes must be positive");
  if (edges.empty()) throw InvalidInput("pattern has no edges");
  std::set<std::vector<std::uint64_t>> seen;
  for (const auto& e : edges) {
    if (e.size() != d - 1) throw InvalidInput("edge arity does not match d - 1");
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] < 1 || e[i] > part_sizes[i]) throw InvalidInput("edge index out of range");
    if (!seen.insert(e).second) throw InvalidInput("duplicate edge in pattern");
  }

  TuranSchedule out;
  out.d = d;
  out.part_sizes = part_sizes;
  out.S = edges.size();
  out.beta_cubed = std::uint64_t{d} * d + 4ull * d - 5;
  out.s = *std::max_element(part_sizes.begin(), part_sizes.end());
  out.log_base = base;

  // beta enclosure at 30 decimals
  const BigInt scale = big_pow(BigInt(10), 30);
  const BigInt floor_scaled = integer_root_floor(BigInt(out.beta_cubed) * big_pow(scale, 3), 3);
  out.beta.lo = BigRational(floor_scaled, scale);
  out.beta.hi = BigRational(floor_scaled + 1, scale);

  // t = ceil(beta (S s)^{1/3}) is the least t with t^3 >= beta^3 S s.
  const BigInt cube = BigInt(out.beta_cubed) * out.S * out.s;
  out.t = static_cast<std::uint64_t>(integer_root_ceil(cube, 3));

  std::uint64_t sum_s = 0;
  for (auto s : part_sizes) sum_s += s;
  out.r = out.S + out.t + 3;
  out.l = (out.S + out.t) * sum_s;
  out.N = out.S + out.t + out.r;
  out.m.reserve(out.t);
  BigInt prod_m = 1;
  for (std::uint64_t j = 1; j <= out.t; ++j) {
    out.m.push_back(D(out.t - j + 1, out.l));
    prod_m *= out.m.back();
  }
  out.C = BigInt(d) * big_pow(BigInt(3), out.r) * prod_m;

  using boost::multiprecision::pow;
  const Real beta_sq = pow(Real(out.beta_cubed), Real(2) / 3);
  const Real expo = 1 + log_in(Real(out.t), base);
  Real inner = pow(Real(3 * (d - 1)) / beta_sq, expo) * pow(Real(out.t), 3 * expo);
  inner *= Real(1) + Real("1e-60");
  out.s_d_threshold = ceil_real(inner) * big_pow(BigInt(3), out.t + 3) * big_factorial(out.t) *
                      big_pow(BigInt(9), out.S);
  return out;
}

ConditionReport lem12_precondition_check(std::uint64_t N, std::uint64_t m, std::uint64_t r,
                                         std::uint64_t t, std::uint64_t l, std::uint64_t s) {
  ConditionReport rep;

  rep.conditions.push_back({"m_at_least_3", m >= 3, "m = " + std::to_string(m)});

  const BigInt binom = big_binomial(t + 1 + m, m);
  rep.conditions.push_back({"l_plus_1_le_binomial", BigInt(l) + 1 <= binom,
                            "l + 1 = " + std::to_string(l + 1) + ", C(t+1+m, m) = " + big_string(binom)});

  bool psi_ok = true;
  BigRational worst = 0;
  std::string psi_detail;
  for (std::uint64_t u = 2; u <= s; ++u) {
    const auto psi = regseq::psi_upper(N, u, m);
    if (psi.kind == regseq::PsiBound::Kind::empty) continue;
    if (psi.kind == regseq::PsiBound::Kind::not_applicable) {
      psi_ok = false;
      psi_detail = "psi bound not applicable at u = " + std::to_string(u);
      break;
    }
    worst = std::max(worst, psi.value / BigRational(u - 1));
  }
  if (psi_ok) {
    psi_ok = worst + 1 <= BigRational(r);
    psi_detail = "max psi/(u-1) = " + rational_string(worst) + ", r = " + std::to_string(r);
  }
  rep.conditions.push_back({"r_exceeds_psi_ratio", psi_ok, psi_detail});

  rep.holds = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                          [](const Condition& c) { return c.holds; });
  return rep;
}

bool turan_binomial_chain_holds(const TuranSchedule& sched) {
  return big_binomial(sched.t + 4, 3) > BigInt(sched.l);
}

ZarankiewiczSchedule zarankiewicz_schedule(std::uint64_t S, std::uint64_t m) {
  if (S == 0 || m == 0) throw InvalidInput("zarankiewicz_schedule needs S, m >= 1");
  ZarankiewiczSchedule out;
  out.S = S;
  out.m = m;
  out.r = integer_root_floor(S, 2);
  if (out.r * out.r < S) ++out.r;
  const BigInt avail = big_binomial(out.r + m + 1, m) - 1;
  out.t = static_cast<std::uint64_t>(avail / (2 * BigInt(S)));

  auto& rep = out.feasibility;
  rep.conditions.push_back({"t_positive", out.t >= 1, "t = " + std::to_string(out.t)});
  rep.conditions.push_back({"binomial_exceeds_2tS", avail + 1 > 2 * BigInt(S) * out.t,
                            "C(r+m+1, m) = " + big_string(avail + 1)});
  rep.holds = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                          [](const Condition& c) { return c.holds; });
  return out;
}

Lem14Report lem14_feasible(const std::vector<std::uint64_t>& sizes, std::uint64_t t, std::uint64_t r,
                           std::uint64_t m, std::uint64_t S) {
  if (sizes.size() < 2) throw InvalidInput("lem14_feasible needs at least two part sizes");
  if (t == 0 || r == 0 || m == 0 || S == 0) throw InvalidInput("lem14_feasible needs positive t, r, m, S");
  for (auto s : sizes)
    if (s == 0) throw InvalidInput("part sizes must be positive");

  Lem14Report out;
  const BigInt binom = big_binomial(r + m + 1, m);
  const BigInt twice = 2 * BigInt(t) * S;
  out.report.conditions.push_back({"binomial_exceeds_2tS", binom > twice,
                                   "C(r+m+1, m) = " + big_string(binom) + ", 2tS = " + big_string(twice)});

  BigInt arg = 2 * BigInt(t);
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) arg *= sizes[i];
  arg += 1;
  if (arg > std::numeric_limits<std::uint64_t>::max()) throw InvalidInput("part sizes too large");
  const auto a = static_cast<std::uint64_t>(arg);
  out.threshold = big_pow(BigInt(m), S);
  for (std::uint64_t j = 1; j <= r; ++j) out.threshold *= D(r - j + 1, a);
  out.report.conditions.push_back({"apex_size_exceeds_threshold", BigInt(sizes.back()) > out.threshold,
                                   "s_d = " + std::to_string(sizes.back()) +
                                       ", threshold = " + big_string(out.threshold)});
  out.report.holds = out.report.conditions[0].holds && out.report.conditions[1].holds;
  return out;
}

std::vector<std::uint64_t> zarankiewicz_degrees(std::uint64_t r, std::uint64_t p,
                                                const std::vector<std::uint64_t>& n,
                                                const std::vector<std::uint64_t>& s) {
  if (p < 2) throw InvalidInput("zarankiewicz_degrees needs p >= 2");
  if (n.size() != s.size()) throw InvalidInput("sizes and exponents differ in length");
  BigInt prod = 1;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] == 0) throw InvalidInput("part sizes must be positive");
    prod *= big_pow(BigInt(n[i]), s[i]);
  }
  // floor(log_p prod)
  std::uint64_t k = 0;
  BigInt power = p;
  while (power <= prod) {
    power *= p;
    ++k;
  }
  std::vector<std::uint64_t> out;
  out.reserve(r);
  for (std::uint64_t j = 1; j <= r; ++j) out.push_back(D(r - j + 1, k + 1));
  return out;
}

std::uint64_t select_prime(std::uint64_t n, std::uint64_t C, unsigned S) {
  if (C == 0 || S == 0) throw InvalidInput("select_prime needs C, S >= 1");
  const std::uint64_t ratio = n / C;  // C p^S <= n  iff  p^S <= floor(n / C)
  std::uint64_t p = integer_root_floor(ratio, S);
  while (p >= 2 && !gf::is_prime(p)) --p;
  if (p < 2)
    throw InvalidInput("no prime p with C p^S <= n (n = " + std::to_string(n) + ", C = " +
                       std::to_string(C) + ", S = " + std::to_string(S) + ")");
  if (BigInt(n) > BigInt(C) * big_pow(BigInt(2 * p), S))
    throw VerificationError("selected prime violates the upper window n <= C (2p)^S");
  return p;
}

nlohmann::json to_json(const ConditionReport& r) {
  nlohmann::json j;
  j["holds"] = r.holds;
  auto arr = nlohmann::json::array();
  for (const auto& c : r.conditions) arr.push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
  j["conditions"] = std::move(arr);
  return j;
}

nlohmann::json to_json(const TuranSchedule& s) {
  nlohmann::json j;
  j["d"] = s.d;
  j["part_sizes"] = s.part_sizes;
  j["S"] = s.S;
  j["beta"] = {{"cube", s.beta_cubed},
               {"lo", decimal_string(s.beta.lo, 30)},
               {"hi", decimal_string(s.beta.hi, 30)}};
  j["s"] = s.s;
  j["t"] = s.t;
  j["r"] = s.r;
  j["l"] = s.l;
  j["N"] = s.N;
  j["m"] = s.m;
  j["C"] = big_string(s.C);
  j["s_d_threshold"] = big_string(s.s_d_threshold);
  j["log_base"] = to_string(s.log_base);
  return j;
}

nlohmann::json to_json(const ZarankiewiczSchedule& s) {
  nlohmann::json j;
  j["S"] = s.S;
  j["r"] = s.r;
  j["m"] = s.m;
  j["t"] = s.t;
  j["feasibility"] = to_json(s.feasibility);
  return j;
}

}  // namespace apexforge::schedule
