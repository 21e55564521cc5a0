#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "apexforge/numeric.hpp"

namespace apexforge::hypergraph {

using apexforge::BigInt;

using Vertex = std::uint32_t;

/// A (d-1)-partite (d-1)-uniform template H: part sizes s_1..s_{d-1} and an
/// edge set E of (d-1)-tuples, 0-based. The apex hypergraph H(k) adds a d-th
/// part of k vertices each joined to every edge of E.
class Pattern {
 public:
  /// Throws InvalidInput on an empty or out-of-range edge set.
  Pattern(std::vector<std::size_t> part_sizes, std::vector<std::vector<Vertex>> edges);

  /// Pattern file: first line `d s_1 ... s_{d-1}`, then one edge per line as
  /// d-1 indices (1-based).
  static Pattern parse(std::istream& in);
  static Pattern parse(const std::string& text);
  /// Compact CLI form: parts "2,2" and edges "1,1;1,2;2,1" (1-based).
  static Pattern from_spec(const std::string& parts, const std::string& edges);

  std::size_t num_parts() const { return part_sizes_.size(); }
  std::size_t uniformity() const { return part_sizes_.size() + 1; }  // d
  const std::vector<std::size_t>& part_sizes() const { return part_sizes_; }
  const std::vector<std::vector<Vertex>>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t max_part_size() const;

  std::string to_text() const;

 private:
  std::vector<std::size_t> part_sizes_;
  std::vector<std::vector<Vertex>> edges_;
};

/// Complete (d-1)-partite pattern K_{s_1,...,s_{d-1}}.
Pattern complete_pattern(std::vector<std::size_t> part_sizes);

/// Codegree lookup for one apex side: key = the (d-1)-tuple over the other
/// parts, value = sorted apex list.
class ApexIndex {
 public:
  ApexIndex(std::size_t apex_side, std::span<const std::size_t> part_sizes,
            std::span<const Vertex> flat_edges);

  std::size_t apex_side() const { return apex_side_; }
  /// `others` lists one vertex per part != apex_side, in part order.
  std::span<const Vertex> apexes(std::span<const Vertex> others) const;

 private:
  std::uint64_t key(std::span<const Vertex> others) const;

  std::size_t apex_side_;
  std::vector<std::size_t> radix_;
  std::unordered_map<std::uint64_t, std::vector<Vertex>> lists_;
};

/// d-partite d-uniform host hypergraph with part-local vertex indices.
class PartiteHypergraph {
 public:
  /// Edges are sorted lexicographically. Throws InvalidInput on an
  /// out-of-range or duplicate edge.
  PartiteHypergraph(std::vector<std::size_t> part_sizes, std::vector<std::vector<Vertex>> edges);

  PartiteHypergraph(const PartiteHypergraph& other);
  PartiteHypergraph& operator=(const PartiteHypergraph& other);
  PartiteHypergraph(PartiteHypergraph&&) noexcept;
  PartiteHypergraph& operator=(PartiteHypergraph&&) noexcept;
  ~PartiteHypergraph();

  std::size_t d() const { return part_sizes_.size(); }
  const std::vector<std::size_t>& part_sizes() const { return part_sizes_; }
  std::size_t num_vertices() const;
  std::size_t edge_count() const { return d() == 0 ? 0 : flat_.size() / d(); }
  std::span<const Vertex> edge(std::size_t i) const { return {flat_.data() + i * d(), d()}; }
  std::span<const Vertex> flat_edges() const { return flat_; }
  bool has_edge(std::span<const Vertex> e) const;

  /// Built on first use per side and cached; safe to call concurrently.
  const ApexIndex& apex_index(std::size_t apex_side) const;

 private:
  std::vector<std::size_t> part_sizes_;
  std::vector<Vertex> flat_;
  mutable std::mutex index_mutex_;
  mutable std::vector<std::unique_ptr<ApexIndex>> index_cache_;
};

/// {z : w + z in E(G)} on `apex_side`; w lists the other parts in order.
/// Throws InvalidInput on out-of-range indices.
std::vector<Vertex> codegree(const PartiteHypergraph& G, std::span<const Vertex> w,
                             std::size_t apex_side);

/// Assignment of H(k)'s parts to host parts: sigma[i] is the host part of
/// pattern part i for i < d-1, sigma[d-1] the host part receiving the apex.
using PartAssignment = std::vector<std::size_t>;

PartAssignment identity_assignment(std::size_t d);

struct Embedding {
  PartAssignment sigma;
  std::vector<std::vector<Vertex>> parts;  // host vertex of each pattern vertex
  std::vector<Vertex> common_apexes;
};

struct ApexSearchResult {
  std::size_t K = 0;
  std::optional<Embedding> witness;  // empty only when no embedding exists
};

/// Maximum over injective part-respecting embeddings of H of the number of
/// common apexes. Branch and bound over pattern vertices in part order,
/// intersecting apex lists as edges complete; branches whose running
/// intersection cannot beat the best are cut. The witness is the
/// lexicographically first embedding attaining K. Throws InvalidInput when a
/// pattern part exceeds its host part or sigma is not a permutation.
ApexSearchResult max_common_apex(const PartiteHypergraph& G, const Pattern& H, const PartAssignment& sigma);

enum class FreenessMode { sided, unordered };

struct FreenessResult {
  bool free = true;
  std::size_t K = 0;
  std::optional<Embedding> witness;  // attains K
};

/// H(k)-freeness. Sided mode checks sigma = identity; unordered mode takes
/// the maximum over all d! assignments, skipping those where H does not fit.
FreenessResult is_apex_free(const PartiteHypergraph& G, const Pattern& H, std::size_t k, FreenessMode mode);

/// Labeled d-uniform pattern for homomorphism counting; edges are vertex
/// sets (no orientation).
struct UniformPattern {
  std::size_t num_vertices = 0;
  std::vector<std::vector<std::size_t>> edges;
};

/// |Hom(H', G)|: maps V(H') -> V(G) sending each edge of H' onto an edge of G
/// (as vertex sets). V(G) is the disjoint union of the parts, numbered part
/// by part. Patterns are labeled, so one d-edge gives d! * e(G). Throws
/// BudgetExceeded past `budget` search nodes or more than 8 pattern vertices.
BigInt count_homomorphisms(const UniformPattern& H, const PartiteHypergraph& G,
                             std::uint64_t budget = 100'000'000);

/// |Hom| / |V(G)|^{|V(H')|}.
double homomorphism_density(const UniformPattern& H, const PartiteHypergraph& G,
                            std::uint64_t budget = 100'000'000);

struct EdgeBoundReport {
  std::uint64_t e_G = 0;
  std::uint64_t n = 0;                 // |V(G)|
  double half_p_power = 0;             // p^{dS-1} / 2
  double explicit_constant_bound = 0;  // 2^{-dS} C^{-d+1/S} n^{d-1/S}
  bool meets_half_p_power = false;
  bool meets_explicit_constant = false;
};

EdgeBoundReport edge_bound_report(const PartiteHypergraph& G, std::uint64_t S, std::uint64_t p,
                                  double C_const);

struct ZarankiewiczBoundReport {
  std::uint64_t e_G = 0;
  double bound = 0;  // p^{S-1}/2 * prod_{i<d} n_i
  bool meets_bound = false;
};

ZarankiewiczBoundReport zarankiewicz_bound_report(const PartiteHypergraph& G, std::uint64_t S,
                                                  std::uint64_t p);

/// Least-squares slope of log e against log n. Throws InvalidInput with
/// fewer than two rows or non-increasing n.
double exponent_fit(std::span<const std::pair<double, double>> rows);

/// Edge-list file: header `d p N n_1 ... n_d`, then one edge per line.
void write_edge_file(std::ostream& out, const PartiteHypergraph& G, std::uint64_t p, std::uint64_t N);
struct EdgeFile {
  std::uint64_t p = 0;
  std::uint64_t N = 0;
  PartiteHypergraph graph;
};
EdgeFile read_edge_file(std::istream& in);

nlohmann::json to_json(const Embedding& e);

}  // namespace apexforge::hypergraph
