#include "apexforge/gf.hpp"

#include <sstream>

#include "apexforge/error.hpp"
#include "apexforge/numeric.hpp"

namespace apexforge::gf {
namespace {

using Poly = std::vector<std::uint32_t>;  // low-to-high

// Remainder of a modulo monic b over GF(p).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i < db; ++i)
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * b[i]) % p);
    }
    a.pop_back();
  }
  return a;
}

Poly decode(std::uint64_t v, std::uint32_t p, unsigned e) {
  Poly out(e);
  for (unsigned i = 0; i < e; ++i) {
    out[i] = static_cast<std::uint32_t>(v % p);
    v /= p;
  }
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::uint64_t i = 5; i <= n / i; i += 6)
    if (n % i == 0 || n % (i + 2) == 0) return false;
  return true;
}

bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p) {
  if (poly.size() < 2 || poly.back() != 1) throw InvalidInput("is_irreducible: expected a monic polynomial");
  const unsigned deg = static_cast<unsigned>(poly.size() - 1);
  const Poly f(poly.begin(), poly.end());
  for (unsigned k = 1; k <= deg / 2; ++k) {
    const auto count = checked_pow(p, k);
    if (!count) throw BudgetExceeded("is_irreducible: too many candidate factors");
    for (std::uint64_t idx = 0; idx < *count; ++idx) {
      Poly divisor = decode(idx, p, k);
      divisor.push_back(1);
      Poly rem = poly_mod(f, divisor, p);
      bool zero = true;
      for (auto c : rem) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> find_irreducible(std::uint32_t p, unsigned e, std::uint64_t budget) {
  if (!is_prime(p)) throw InvalidInput("find_irreducible: p must be prime");
  if (e < 1 || e > Field::kMaxDegree) throw InvalidInput("find_irreducible: degree must be in 1..4");
  const auto count = checked_pow(p, e);
  if (!count || *count > budget) throw BudgetExceeded("find_irreducible: p^e exceeds the enumeration budget");
  for (std::uint64_t idx = 0; idx < *count; ++idx) {
    Poly cand = decode(idx, p, e);
    cand.push_back(1);
    if (is_irreducible(cand, p)) return cand;
  }
  throw VerificationError("find_irreducible: no irreducible polynomial found");
}

Field Field::prime(std::uint32_t p) { return Field(p, 1, {}); }

Field Field::extension(std::uint32_t p, unsigned e) {
  if (e == 1) return prime(p);
  return Field(p, e, find_irreducible(p, e));
}

Field::Field(std::uint32_t p, unsigned e, std::vector<std::uint32_t> modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw InvalidInput("field characteristic " + std::to_string(p) + " is not prime");
  if (e < 1 || e > kMaxDegree) throw InvalidInput("extension degree must be in 1..4");
  const auto q = checked_pow(p, e);
  if (!q || *q > (std::uint64_t{1} << 31)) throw InvalidInput("field order too large");
  q_ = static_cast<std::uint32_t>(*q);
  if (e == 1) {
    if (!modulus_.empty() && !(modulus_.size() == 2 && modulus_[1] == 1 && modulus_[0] < p))
      throw InvalidInput("prime field takes no modulus");
    modulus_.clear();
    return;
  }
  if (modulus_.size() != e + 1 || modulus_.back() != 1)
    throw InvalidInput("modulus must be monic of degree e");
  for (auto c : modulus_)
    if (c >= p) throw InvalidInput("modulus coefficient out of range");
  if (!is_irreducible(modulus_, p)) throw InvalidInput("modulus is reducible");
}

Element Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r)};
}

Element Field::from_residues(std::span<const std::uint32_t> residues) const {
  if (residues.size() != e_) throw InvalidInput("residue vector has wrong length");
  std::uint32_t v = 0;
  for (std::size_t i = e_; i-- > 0;) {
    if (residues[i] >= p_) throw InvalidInput("residue out of range");
    v = v * p_ + residues[i];
  }
  return {v};
}

std::vector<std::uint32_t> Field::residues(Element a) const { return decode(a.value, p_, e_); }

void Field::check(Element a) const {
  if (a.value >= q_) throw InvalidInput("element " + std::to_string(a.value) + " not in " + describe());
}

Element Field::add(Element a, Element b) const {
  if (e_ == 1) {
    std::uint32_t s = a.value + b.value;
    return {s >= p_ ? s - p_ : s};
  }
  std::uint32_t out = 0, scale = 1, x = a.value, y = b.value;
  for (unsigned i = 0; i < e_; ++i) {
    std::uint32_t s = x % p_ + y % p_;
    if (s >= p_) s -= p_;
    out += s * scale;
    scale *= p_;
    x /= p_;
    y /= p_;
  }
  return {out};
}

Element Field::neg(Element a) const {
  if (e_ == 1) return {a.value == 0 ? 0 : p_ - a.value};
  std::uint32_t out = 0, scale = 1, x = a.value;
  for (unsigned i = 0; i < e_; ++i) {
    std::uint32_t c = x % p_;
    out += (c == 0 ? 0 : p_ - c) * scale;
    scale *= p_;
    x /= p_;
  }
  return {out};
}

Element Field::sub(Element a, Element b) const { return add(a, neg(b)); }

Element Field::mul(Element a, Element b) const {
  if (e_ == 1) return {static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value % p_)};
  const Poly x = residues(a), y = residues(b);
  Poly prod(2 * e_ - 1, 0);
  for (unsigned i = 0; i < e_; ++i)
    for (unsigned j = 0; j < e_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_);
  Poly r = poly_mod(std::move(prod), modulus_, p_);
  r.resize(e_, 0);
  return from_residues(r);
}

Element Field::pow(Element a, std::uint64_t n) const {
  Element acc = one(), base = a;
  while (n) {
    if (n & 1) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

Element Field::inv(Element a) const {
  if (a.value == 0) throw InvalidInput("inverse of zero");
  if (e_ == 1) return {inv_mod(a.value, p_)};
  return pow(a, q_ - 2);
}

std::vector<Element> Field::elements() const {
  std::vector<Element> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = {i};
  return out;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "GF(" << p_;
  if (e_ > 1) os << "^" << e_;
  os << ")";
  return os.str();
}

Element mul(Element a, Element b, const Field& F) {
  F.check(a);
  F.check(b);
  return F.mul(a, b);
}

Element inv(Element a, const Field& F) {
  F.check(a);
  return F.inv(a);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  if (new_r == 0) throw InvalidInput("inverse of zero");
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

}  // namespace apexforge::gf
