#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apexforge/gf.hpp"
#include "apexforge/numeric.hpp"
#include "apexforge/poly.hpp"

namespace apexforge::geometry {

/// Default cap on the number of points an enumeration may visit.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 20'000'000;

/// Point of P^N in canonical form: the leftmost nonzero coordinate is 1.
class ProjPoint {
 public:
  ProjPoint() = default;

  /// Throws InvalidInput on the zero vector.
  static ProjPoint canonicalize(std::span<const gf::Element> v, const gf::Field& F);

  const std::vector<gf::Element>& coords() const { return coords_; }
  std::size_t dimension() const { return coords_.size() - 1; }

  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;

 private:
  explicit ProjPoint(std::vector<gf::Element> c) : coords_(std::move(c)) {}
  std::vector<gf::Element> coords_;
};

inline ProjPoint canonicalize(std::span<const gf::Element> v, const gf::Field& F) {
  return ProjPoint::canonicalize(v, F);
}

/// Distinct points of P^N(F), optionally with the forms they were cut out by.
struct PointSet {
  std::size_t ambient_dim = 0;  // N
  gf::Field field = gf::Field::prime(2);
  std::vector<ProjPoint> points;
  std::optional<std::vector<poly::HomogPoly>> provenance;

  std::size_t size() const { return points.size(); }
};

/// (q^{N+1} - 1) / (q - 1).
std::uint64_t projective_size(std::size_t N, std::uint64_t q);

/// All of P^N(F). Order: points whose leading 1 sits at coordinate 0 first,
/// then coordinate 1, and so on; within a chart, trailing coordinates run
/// lexicographically over element encodings.
PointSet enumerate_projective(std::size_t N, const gf::Field& F,
                              std::uint64_t budget = kDefaultEnumerationBudget);

/// Canonical points where every form vanishes, in enumerate_projective order.
/// Scans only canonical representatives; may split the scan across workers.
PointSet variety_points(std::size_t N, std::span<const poly::HomogPoly> polys, const gf::Field& F,
                        std::uint64_t budget = kDefaultEnumerationBudget);

/// Number of points in V(polys)(F) without materializing them.
std::uint64_t variety_count(std::size_t N, std::span<const poly::HomogPoly> polys, const gf::Field& F,
                            std::uint64_t budget = kDefaultEnumerationBudget);

/// Degree-m Veronese image, canonicalized.
ProjPoint veronese(const ProjPoint& v, unsigned m, const gf::Field& F);

/// k (q^{n+1} - 1) / (q - 1): the point-count ceiling for a variety of
/// dimension n and degree k.
BigInt point_count_upper(std::uint64_t k, std::uint64_t n, std::uint64_t q);

struct DimensionEstimate {
  int estimate = -1;                  // -1 when every count is zero
  std::vector<std::uint64_t> counts;  // |V(F_{p^e})| for e = 1..e_max
};

/// Point counts over GF(p^e), e = 1..e_max, for forms with GF(p)
/// coefficients; the estimate is round(log_{p^e_max} count_{e_max}). A
/// diagnostic, not a certified dimension.
DimensionEstimate dimension_estimate(std::size_t N, std::span<const poly::HomogPoly> polys,
                                     unsigned e_max,
                                     std::uint64_t budget = kDefaultEnumerationBudget);

/// Point-set dump: header `N q count`, then one point per line as
/// space-separated element encodings.
std::string dump_points(const PointSet& X);

}  // namespace apexforge::geometry
