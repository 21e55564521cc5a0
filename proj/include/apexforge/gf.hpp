#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace apexforge::gf {

/// An element of GF(p^e), stored as the base-p integer sum(c_i * p^i) of its
/// residue vector (c_0, ..., c_{e-1}). For prime fields this is the residue.
struct Element {
  std::uint32_t value = 0;

  friend auto operator<=>(const Element&, const Element&) = default;
};

/// Exact primality by trial division.
bool is_prime(std::uint64_t n);

/// Lexicographically least monic irreducible polynomial of degree e over
/// GF(p), returned low-to-high (e + 1 coefficients, last is 1). Candidates are
/// ordered by the integer sum(c_i p^i) over the non-leading coefficients.
/// For e == 1 this is x. Throws BudgetExceeded when p^e exceeds the budget.
std::vector<std::uint32_t> find_irreducible(std::uint32_t p, unsigned e,
                                            std::uint64_t budget = 1u << 20);

/// True iff the monic polynomial (low-to-high coefficients) has no monic factor
/// of degree 1..deg/2 over GF(p). Brute force; meant for deg <= 4.
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p);

/// Field parameters for GF(p^e), e <= 4. Value type; cheap to copy.
class Field {
 public:
  static constexpr unsigned kMaxDegree = 4;

  /// GF(p).
  static Field prime(std::uint32_t p);
  /// GF(p^e) with the modulus chosen by find_irreducible.
  static Field extension(std::uint32_t p, unsigned e);

  /// Validates primality of p and irreducibility of the modulus.
  Field(std::uint32_t p, unsigned e, std::vector<std::uint32_t> modulus);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint32_t order() const { return q_; }
  bool is_prime_field() const { return e_ == 1; }
  /// Degree-e monic modulus, low-to-high; empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Element zero() const { return {0}; }
  Element one() const { return {1}; }
  /// Image of an integer under Z -> GF(p) -> GF(p^e).
  Element from_int(std::int64_t v) const;
  Element from_residues(std::span<const std::uint32_t> residues) const;
  std::vector<std::uint32_t> residues(Element a) const;
  /// Throws InvalidInput if a is not a valid encoding in this field.
  void check(Element a) const;

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  /// Throws InvalidInput on zero.
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t n) const;

  /// Elements in encoding order 0..q-1.
  std::vector<Element> elements() const;

  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.modulus_ == b.modulus_;
  }

 private:
  std::uint32_t p_ = 2;
  unsigned e_ = 1;
  std::uint32_t q_ = 2;
  std::vector<std::uint32_t> modulus_;
};

/// Checked product; throws InvalidInput if either operand is not an element
/// of F.
Element mul(Element a, Element b, const Field& F);
/// Checked inverse; throws InvalidInput on zero or invalid operand.
Element inv(Element a, const Field& F);

/// Inverse of a nonzero residue mod prime p.
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

}  // namespace apexforge::gf
