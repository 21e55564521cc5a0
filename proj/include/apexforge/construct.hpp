#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apexforge/geometry.hpp"
#include "apexforge/gf.hpp"
#include "apexforge/hypergraph.hpp"
#include "apexforge/poly.hpp"
#include "apexforge/regseq.hpp"
#include "apexforge/schedule.hpp"

namespace apexforge::construct {

inline constexpr int kCertificateVersion = 1;

/// Stage tags of the RNG stream ids (see apexforge::stream_id).
enum Stage : std::uint16_t {
  kStageF = 1,
  kStageH = 2,
  kStageG = 3,
  kStageZarG = 4,
  kStageZarH = 5,
};

struct Budgets {
  std::uint32_t retries = 50;  // per stage
  std::uint64_t enumeration = geometry::kDefaultEnumerationBudget;
};

/// Why sampled candidates were rejected, per stage.
struct FailureCounts {
  std::uint32_t nonregular = 0;
  std::uint32_t dependent = 0;
  std::uint32_t empty = 0;
  std::uint32_t edge_bound = 0;
  std::uint32_t apex_cap = 0;
};

nlohmann::json to_json(const FailureCounts& c);

struct IndependentVariety {
  std::vector<poly::HomogPoly> f;
  geometry::PointSet points;  // V(f)(F_p)
  regseq::RegularityCertificate hilbert;
  regseq::RegularityCertificate koszul;
  regseq::IndependenceReport independence;
  std::uint32_t attempts = 0;  // samples drawn, including the accepted one
  FailureCounts failures;
};

/// Samples r forms of degree m in N+1 variables until they are regular by
/// both criteria and V(f)(F_p) is s-wise m-independent. Attempt i draws from
/// stream (kStageF, part, i) of `seed`. Throws InvalidInput unless 1 <= r <= N,
/// BudgetExceeded after `budgets.retries` rejected samples.
IndependentVariety build_independent_variety(std::size_t N, unsigned m, std::size_t r, std::size_t s,
                                             const gf::Field& F, std::uint64_t seed, std::uint16_t part,
                                             const Budgets& budgets);

/// Direct-mode parameters of the Turan construction.
struct TuranParams {
  std::size_t N = 4;
  std::uint32_t p = 11;
  unsigned m = 3;
  std::size_t r = 1;
  std::size_t t = 1;
  std::vector<unsigned> degrees{2};  // m_1..m_t
  std::uint64_t seed = 0;
  Budgets budgets;
  schedule::LogBase log_base = schedule::LogBase::two;
  /// Test hook: use g = 0 on every attempt.
  bool force_zero_g = false;
};

struct TuranInstance {
  TuranParams params;
  hypergraph::Pattern pattern;
  std::vector<IndependentVariety> f_parts;         // per part k
  std::vector<std::vector<poly::HomogPoly>> h;     // per part k
  std::vector<regseq::RegularityCertificate> fh_regularity;  // (f_k, h_k), Hilbert route
  std::vector<std::uint32_t> h_attempts;
  std::vector<FailureCounts> h_failures;
  std::vector<geometry::PointSet> V;  // V_k = V(f_k, h_k)(F_p)
  poly::MultiHomogPoly g;
  std::uint32_t g_attempts = 0;
  FailureCounts g_failures;
};

/// Measured quantities checked on every accepted instance and recomputed by
/// verify.
struct Verification {
  bool edge_recheck = false;  // every edge vanishes on g and lies in the parts
  std::uint64_t e_G = 0;
  std::size_t realized_k = 0;            // sided (identity assignment)
  std::size_t realized_k_unordered = 0;  // max over all d! assignments
  std::optional<hypergraph::Embedding> witness;
  double half_p_power = 0;  // e(G) target
  bool meets_edge_bound = false;
  BigInt apex_cap;  // bound on realized_k_unordered (Turan) or realized_k
  bool meets_apex_cap = false;
  bool lang_weil_ok = false;  // every part within the point-count ceiling
  double exponent_target = 0;
};

nlohmann::json to_json(const Verification& v);

struct TuranResult {
  TuranInstance instance;
  hypergraph::PartiteHypergraph graph;
  Verification verification;
};

/// Builds the Turan host: per part an independent complete intersection
/// V(f_k) cut by forms h_k into V_k, then a random g in R_m^{(x)d} with edges
/// W_g = {v in prod V_k : g(v) = 0}. g is resampled while e(G) <
/// p^{dS-1}/2 or the realized apex maximum exceeds m^{r+S} prod m_j.
/// Requires N = S + r + t.
TuranResult build_turan(const TuranParams& params, const hypergraph::Pattern& H);

struct ZarParams {
  std::size_t n = 2;                 // ambient dimension of parts 1..d-1
  std::vector<std::size_t> sizes{3, 3};  // n_1..n_{d-1}
  std::optional<std::size_t> n_d;    // default 2 p^S prod m_j
  std::uint32_t p = 7;
  unsigned m = 3;
  std::optional<std::size_t> r;             // default ceil(sqrt S)
  std::optional<std::vector<unsigned>> degrees;  // default schedule::zarankiewicz_degrees
  std::uint64_t seed = 0;
  Budgets budgets;
  schedule::LogBase log_base = schedule::LogBase::two;
};

struct ZarInstance {
  ZarParams params;  // optional fields resolved
  hypergraph::Pattern pattern;
  std::size_t N = 0;  // r + S
  std::vector<unsigned> degrees;
  std::vector<geometry::PointSet> Y;  // Y_1..Y_d
  std::size_t variety_size = 0;       // |V(h)(F_p)|, the leading points of Y_d
  poly::MultiHomogPoly g;
  std::vector<poly::HomogPoly> h;
  regseq::RegularityCertificate h_regularity;
  std::uint32_t attempts = 0;
  FailureCounts failures;
};

struct ZarResult {
  ZarInstance instance;
  hypergraph::PartiteHypergraph graph;
  Verification verification;
};

/// Three-step construction: Y_i are the first n_i standard basis points of
/// P^n, Y_d = V(h)(F_p) followed by padding points in enumeration order, and
/// edges are the tuples in prod Y_i x V(h)(F_p) where g vanishes. (g, h) is
/// resampled until h is regular, e(G) >= p^{S-1}/2 prod n_i and the sided
/// apex maximum is at most m^S prod m_j.
ZarResult build_zarankiewicz(const ZarParams& params, const hypergraph::Pattern& H);

/// Certificate document plus the edge list it refers to.
struct Certificate {
  nlohmann::json doc;
  hypergraph::PartiteHypergraph graph;
};

Certificate make_certificate(const TuranResult& r, const std::string& edges_file = "edges.txt");
Certificate make_certificate(const ZarResult& r, const std::string& edges_file = "edges.txt");

/// Writes `<dir>/certificate.json` and the edge file named in the document.
/// Throws std::runtime_error on I/O failure.
void emit_certificate(const Certificate& cert, const std::filesystem::path& dir);

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyReport {
  bool ok = false;
  std::vector<CheckResult> checks;
};

nlohmann::json to_json(const VerifyReport& r);

/// Loads a certificate and its edge file, rebuilds the parts from the stored
/// polynomials and recomputes edges, regularity, independence, e(G) and the
/// realized apex maxima. Throws InvalidInput on a malformed file.
VerifyReport verify_certificate(const std::filesystem::path& cert_path);

/// Same, on an in-memory certificate.
VerifyReport verify_certificate(const nlohmann::json& doc, const hypergraph::PartiteHypergraph& graph);

}  // namespace apexforge::construct
