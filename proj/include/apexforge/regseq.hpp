#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "apexforge/geometry.hpp"
#include "apexforge/numeric.hpp"
#include "apexforge/poly.hpp"

namespace apexforge::regseq {

/// h_X(m): rank of the degree-m Veronese vectors of X.
std::size_t hilbert_function_points(const geometry::PointSet& X, unsigned m);

/// Hilbert function of an explicit subset of X (indices into X.points).
std::size_t hilbert_function_subset(const geometry::PointSet& X, std::span<const std::size_t> subset,
                                    unsigned m);

struct IndependenceReport {
  std::size_t s = 0;
  unsigned m = 0;
  bool verdict = false;
  /// Lexicographically least s-subset (indices into X) with h_S(m) < s.
  std::vector<std::size_t> witness;
};

/// Whether every s-subset S of X has h_S(m) = s. Searches subsets in
/// lexicographic order, extending only independent prefixes, so the witness
/// is the least offending s-subset. For s <= 2 the check reduces to distinct
/// nonzero Veronese images and runs in near-linear time.
IndependenceReport is_swise_independent(const geometry::PointSet& X, std::size_t s, unsigned m);

/// h_X(m) < |X| while every proper subset Y has h_Y(m) = |Y|.
bool minimally_dependent(const geometry::PointSet& X, unsigned m);

/// Coefficient of t^l in prod(1 - t^{m_i}) / (1 - t)^{N+1}.
std::int64_t ci_hilbert_coeff(std::size_t N, std::span<const unsigned> degrees, unsigned l);

/// dim (R / <f>)_l, for forms in num_vars = N + 1 variables.
std::int64_t hilbert_function_quotient(std::size_t num_vars, std::span<const poly::HomogPoly> f, unsigned l);

enum class Method { hilbert, koszul };

std::string to_string(Method m);

struct RegularityCertificate {
  std::vector<unsigned> degrees;
  bool verdict = false;
  Method method = Method::hilbert;
  unsigned cutoff = 0;
  /// First degree at which the criterion fails.
  std::optional<unsigned> witness_degree;
  /// Koszul route only: a syzygy (one component per f_i, component i of
  /// degree witness_degree - m_i) outside the Koszul boundaries.
  std::optional<std::vector<poly::HomogPoly>> syzygy;
};

/// Sum(m_i) + N + 1.
unsigned default_cutoff(std::size_t N, std::span<const unsigned> degrees);

/// Hilbert-series criterion: compares hilbert_function_quotient with
/// ci_hilbert_coeff for all l <= cutoff. A zero entry f_i is non-regular at
/// once, with witness degree m_i.
RegularityCertificate is_regular_hilbert(std::size_t num_vars, std::span<const poly::HomogPoly> f,
                                         std::optional<unsigned> cutoff = std::nullopt);

struct KoszulDegreeCheck {
  std::size_t rank_d1 = 0;
  std::size_t rank_d2 = 0;
  std::size_t middle_dim = 0;  // sum_i dim R_{l - m_i}
  bool exact = true;
  std::optional<std::vector<poly::HomogPoly>> witness;
};

/// Degree-l strand  (+)_{i<j} R_{l-m_i-m_j} --d2--> (+)_i R_{l-m_i} --d1--> R_l
/// with d1(e_i) = f_i and d2(e_i ^ e_j) = f_i e_j - f_j e_i.
KoszulDegreeCheck koszul_graded_check(std::size_t num_vars, std::span<const poly::HomogPoly> f, unsigned l);

/// Koszul criterion: exactness of every strand l <= cutoff.
RegularityCertificate is_regular_koszul(std::size_t num_vars, std::span<const poly::HomogPoly> f,
                                        std::optional<unsigned> cutoff = std::nullopt);

/// Independent recheck of a negative Koszul certificate: the syzygy
/// annihilates f and lies outside the image of d2 in its degree.
bool revalidate_witness(std::size_t num_vars, std::span<const poly::HomogPoly> f,
                        const RegularityCertificate& cert);

/// sum_i C(N+m_i, N) - min_i C(n-i+1+m_i, m_i), i = 1..s.
BigInt nonregular_dim_bound(std::uint64_t N, std::uint64_t n, std::span<const unsigned> degrees);

struct PsiBound {
  enum class Kind { empty, bound, not_applicable };
  Kind kind = Kind::not_applicable;
  BigRational value = 0;  // meaningful for Kind::bound
};

/// Upper bound on the dimension of the variety of minimally m-dependent
/// t-tuples in P^N: empty when t <= m + 1, otherwise
/// floor(3t/(m+4)) * (N + 1 + (m-2)t/(m+4)) for N, t, m >= 3, m <= t <= N.
PsiBound psi_upper(std::uint64_t N, std::uint64_t t, std::uint64_t m);

nlohmann::json to_json(const RegularityCertificate& c);
nlohmann::json to_json(const IndependenceReport& r);

}  // namespace apexforge::regseq
