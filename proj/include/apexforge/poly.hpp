#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "apexforge/gf.hpp"
#include "apexforge/linalg.hpp"
#include "apexforge/rng.hpp"

namespace apexforge::poly {

/// Degree-m monomials in n variables, in graded-lex order: exponent vectors
/// sorted lexicographically descending, so x_0^m comes first. For n = 3,
/// m = 2 the order is x0^2, x0x1, x0x2, x1^2, x1x2, x2^2.
class MonomialBasis {
 public:
  /// Shared, lazily built instance; thread-safe.
  static const MonomialBasis& get(std::size_t num_vars, unsigned degree);

  MonomialBasis(std::size_t num_vars, unsigned degree);

  std::size_t num_vars() const { return num_vars_; }
  unsigned degree() const { return degree_; }
  std::size_t size() const { return size_; }

  /// Throws InvalidInput on wrong length or total degree.
  std::size_t index(std::span<const unsigned> exps) const;
  std::span<const std::uint8_t> exponents(std::size_t idx) const {
    return {exps_.data() + idx * num_vars_, num_vars_};
  }

 private:
  std::size_t num_vars_;
  unsigned degree_;
  std::size_t size_;
  std::vector<std::uint8_t> exps_;
};

/// Values of every degree-m monomial at `point`, in basis order. This is the
/// raw (non-normalized) Veronese vector.
std::vector<gf::Element> monomial_values(const gf::Field& F, std::span<const gf::Element> point,
                                         unsigned degree);

/// A form of degree m in n variables, dense over its MonomialBasis.
class HomogPoly {
 public:
  HomogPoly(const gf::Field& F, std::size_t num_vars, unsigned degree);
  HomogPoly(const gf::Field& F, std::size_t num_vars, unsigned degree, std::vector<gf::Element> coeffs);

  static HomogPoly monomial(const gf::Field& F, std::span<const unsigned> exps,
                            gf::Element coeff = gf::Element{1});
  static HomogPoly variable(const gf::Field& F, std::size_t num_vars, std::size_t i);

  const gf::Field& field() const { return field_; }
  std::size_t num_vars() const { return num_vars_; }
  unsigned degree() const { return degree_; }
  const MonomialBasis& basis() const { return MonomialBasis::get(num_vars_, degree_); }
  const std::vector<gf::Element>& coeffs() const { return coeffs_; }
  gf::Element coeff(std::size_t i) const { return coeffs_[i]; }
  void set_coeff(std::size_t i, gf::Element c);
  bool is_zero() const;

  HomogPoly operator+(const HomogPoly& other) const;
  HomogPoly scaled(gf::Element c) const;

  friend bool operator==(const HomogPoly& a, const HomogPoly& b) {
    return a.field_ == b.field_ && a.num_vars_ == b.num_vars_ && a.degree_ == b.degree_ &&
           a.coeffs_ == b.coeffs_;
  }

 private:
  gf::Field field_;
  std::size_t num_vars_;
  unsigned degree_;
  std::vector<gf::Element> coeffs_;
};

gf::Element evaluate(const HomogPoly& f, std::span<const gf::Element> point);

/// Dot product of coefficients with precomputed monomial_values.
gf::Element evaluate_with(const HomogPoly& f, std::span<const gf::Element> monomials);

HomogPoly multiply(const HomogPoly& a, const HomogPoly& b);

/// Matrix of g -> f*g from R_{l-m} to R_l: rows indexed by R_l, columns by
/// R_{l-m}. Prime fields only. Throws InvalidInput when l < m.
linalg::Matrix multiply_map_matrix(const HomogPoly& f, unsigned target_degree);

/// I.i.d. uniform coefficients.
HomogPoly sample_uniform(const gf::Field& F, std::size_t num_vars, unsigned degree, Rng& rng);

struct VariableGroup {
  std::size_t num_vars;
  unsigned degree;

  friend bool operator==(const VariableGroup&, const VariableGroup&) = default;
};

/// Element of R_{m_1} (x) ... (x) R_{m_d} over separate variable groups, dense
/// over the product basis (row-major, last group varies fastest).
class MultiHomogPoly {
 public:
  static constexpr std::size_t kDefaultEntryCap = 10'000'000;

  /// Throws InvalidInput if the product basis exceeds `entry_cap`.
  MultiHomogPoly(const gf::Field& F, std::vector<VariableGroup> groups,
                 std::size_t entry_cap = kDefaultEntryCap);
  MultiHomogPoly(const gf::Field& F, std::vector<VariableGroup> groups, std::vector<gf::Element> coeffs,
                 std::size_t entry_cap = kDefaultEntryCap);

  const gf::Field& field() const { return field_; }
  const std::vector<VariableGroup>& groups() const { return groups_; }
  const std::vector<gf::Element>& coeffs() const { return coeffs_; }
  std::vector<gf::Element>& coeffs() { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const;

  /// Flat index of a multi-index (one basis index per group).
  std::size_t flat_index(std::span<const std::size_t> per_group) const;

  friend bool operator==(const MultiHomogPoly& a, const MultiHomogPoly& b) {
    return a.field_ == b.field_ && a.groups_ == b.groups_ && a.coeffs_ == b.coeffs_;
  }

 private:
  gf::Field field_;
  std::vector<VariableGroup> groups_;
  std::vector<gf::Element> coeffs_;
};

/// g(v_1, ..., v_d); one coordinate vector per group.
gf::Element evaluate_multi(const MultiHomogPoly& g, std::span<const std::vector<gf::Element>> points);

/// Fixes the first k groups at `points` (k = points.size() < d) and returns the
/// contracted tensor over the remaining groups. With k = d - 1 the result has
/// a single group; see last_group_form.
MultiHomogPoly partial_evaluate(const MultiHomogPoly& g, std::span<const std::vector<gf::Element>> points);

/// Contraction with precomputed monomial_values for the leading groups.
MultiHomogPoly contract_leading(const MultiHomogPoly& g, std::span<const gf::Element> monomials);

/// Single-group tensor viewed as a form.
HomogPoly last_group_form(const MultiHomogPoly& g);

MultiHomogPoly sample_uniform_multi(const gf::Field& F, std::vector<VariableGroup> groups, Rng& rng,
                                    std::size_t entry_cap = MultiHomogPoly::kDefaultEntryCap);

// Polynomial file format. Terms are the nonzero coefficients in basis order;
// coefficients are element encodings.
nlohmann::json to_json(const HomogPoly& f);
nlohmann::json to_json(const MultiHomogPoly& g);
/// Throws InvalidInput on malformed input.
HomogPoly homog_from_json(const nlohmann::json& j);
MultiHomogPoly multi_from_json(const nlohmann::json& j);

}  // namespace apexforge::poly
