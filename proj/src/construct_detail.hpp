#pragma once

// Helpers shared by the builders and the certificate verifier.

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "apexforge/construct.hpp"

namespace apexforge::construct::detail {

/// Tuples (i_1, ..., i_d) of point indices with g(X_1[i_1], ..., X_d[i_d]) = 0,
/// lexicographically sorted. The last part is restricted to its first
/// `last_limit` points.
std::vector<std::vector<hypergraph::Vertex>> vanishing_edges(const poly::MultiHomogPoly& g,
                                                             const std::vector<geometry::PointSet>& parts,
                                                             std::size_t last_limit);

/// Every edge of G lies in the parts and g vanishes on it.
bool edges_vanish(const poly::MultiHomogPoly& g, const std::vector<geometry::PointSet>& parts,
                  const hypergraph::PartiteHypergraph& G);

/// The first `count` standard basis points of P^n.
geometry::PointSet standard_points(std::size_t n, std::size_t count, const gf::Field& F);

/// V followed by the first points of P^N (enumeration order) not in V, up to
/// `total` points. Throws InvalidInput when P^N has fewer than `total` points.
geometry::PointSet pad_points(const geometry::PointSet& V, std::size_t N, std::size_t total,
                              const gf::Field& F, std::uint64_t budget);

/// m^e * prod degrees.
BigInt apex_cap(unsigned m, std::size_t e, const std::vector<unsigned>& degrees);

hypergraph::PartiteHypergraph host_from(const std::vector<geometry::PointSet>& parts,
                                        std::vector<std::vector<hypergraph::Vertex>> edges);

/// Measured statistics of an accepted Turan instance: edge recheck, e(G),
/// sided and unordered apex maxima, bounds and point-count ceilings.
/// `f_sizes` are |V(f_k)(F_p)|.
Verification measure_turan(const hypergraph::PartiteHypergraph& G, const hypergraph::Pattern& H,
                           const poly::MultiHomogPoly& g, const std::vector<geometry::PointSet>& V,
                           const std::vector<std::size_t>& f_sizes, const TuranParams& P);

/// Same for a Zarankiewicz instance; `P` must have its optional fields resolved.
Verification measure_zar(const hypergraph::PartiteHypergraph& G, const hypergraph::Pattern& H,
                         const poly::MultiHomogPoly& g, const std::vector<geometry::PointSet>& parts,
                         std::size_t variety_size, const std::vector<unsigned>& degrees, std::size_t N,
                         std::size_t r, const ZarParams& P);

nlohmann::json pattern_json(const hypergraph::Pattern& H);
hypergraph::Pattern pattern_from_json(const nlohmann::json& j);

}  // namespace apexforge::construct::detail
