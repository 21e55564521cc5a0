// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "apexforge/cli.hpp"
#include "apexforge/construct.hpp"
#include "apexforge/error.hpp"
#include "apexforge/gf.hpp"
#include "apexforge/regseq.hpp"
#include "apexforge/schedule.hpp"
#include "oracles.hpp"

using namespace apexforge;
namespace fs = std::filesystem;
using gf::Field;
using poly::HomogPoly;

namespace {

// Tolerances and limits.
constexpr double kDualOracleSeconds = 60.0;
constexpr int kDualOracleInstances = 1000;
constexpr double kSlopeTarget = 1.5;
constexpr double kSlopeTolerance = 0.2;
constexpr double kCensusSeconds = 600.0;
constexpr int kFreenessHosts = 500;
constexpr double kTuranEdgeFactor = 0.25;  // e(G) >= kTuranEdgeFactor * p^3
constexpr std::uint64_t kTuranApexCap = 54;  // 3^{r+S} m_1

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x, int prec = 3) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << x;
  return os.str();
}

HomogPoly mono(const Field& F, std::vector<unsigned> e) { return HomogPoly::monomial(F, e); }

const hypergraph::Pattern& two_points() {
  static const auto H = hypergraph::Pattern::from_spec("2", "1;2");
  return H;
}

construct::TuranParams desk(std::uint32_t p) {
  construct::TuranParams P;
  P.p = p;
  return P;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "apexforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome regularity_dual_oracle() {
  const auto F = Field::prime(5);
  const auto t0 = std::chrono::steady_clock::now();
  int disagreements = 0, regular = 0;
  for (int i = 0; i < kDualOracleInstances; ++i) {
    Rng rng(0, static_cast<std::uint64_t>(i));
    const std::size_t N = 1 + rng.uniform_below(4);
    const std::size_t r = 1 + rng.uniform_below(std::min<std::size_t>(3, N + 1));
    std::vector<HomogPoly> f;
    for (std::size_t j = 0; j < r; ++j)
      f.push_back(poly::sample_uniform(F, N + 1, 1 + static_cast<unsigned>(rng.uniform_below(3)), rng));
    const auto h = regseq::is_regular_hilbert(N + 1, f);
    const auto k = regseq::is_regular_koszul(N + 1, f);
    std::vector<unsigned> deg;
    for (const auto& fi : f) deg.push_back(fi.degree());
    const unsigned cutoff = regseq::default_cutoff(N, deg);
    if (h.verdict != k.verdict || h.cutoff != cutoff || k.cutoff != cutoff) ++disagreements;
    regular += h.verdict;
  }
  const double secs = seconds_since(t0);
  return {disagreements == 0 && secs < kDualOracleSeconds,
          std::to_string(kDualOracleInstances) + " instances (" + std::to_string(regular) + " regular), " +
              std::to_string(disagreements) + " disagreements, " + fmt(secs, 1) + " s"};
}

Outcome known_regularity_cases() {
  const auto F = Field::prime(5);
  bool ok = true;
  for (std::size_t N = 1; N <= 4; ++N)
    for (std::size_t r = 0; r <= N; ++r) {
      std::vector<HomogPoly> xs;
      for (std::size_t i = 0; i <= r; ++i) xs.push_back(HomogPoly::variable(F, N + 1, i));
      ok &= regseq::is_regular_hilbert(N + 1, xs).verdict && regseq::is_regular_koszul(N + 1, xs).verdict;
    }
  const std::vector<HomogPoly> bad{mono(F, {2, 0, 0}), mono(F, {1, 1, 0})};
  const auto h = regseq::is_regular_hilbert(3, bad);
  const auto k = regseq::is_regular_koszul(3, bad);
  bool syz = false;
  if (k.syzygy && k.syzygy->size() == 2) {
    const auto& a = (*k.syzygy)[0];
    const auto c = a.coeff(a.basis().index(std::vector<unsigned>{0, 1, 0}));
    syz = c.value != 0 && a == mono(F, {0, 1, 0}).scaled(c) && (*k.syzygy)[1] == mono(F, {1, 0, 0}).scaled(F.neg(c));
  }
  ok &= !h.verdict && h.witness_degree == 3u && !k.verdict && k.witness_degree == 3u && syz;
  const std::vector<HomogPoly> twice{mono(F, {1, 0, 0}), mono(F, {1, 0, 0})};
  ok &= !regseq::is_regular_hilbert(3, twice).verdict && !regseq::is_regular_koszul(3, twice).verdict;
  return {ok, "variables regular; (x0^2, x0 x1) fails at degree 3 with syzygy (x1, -x0); (x0, x0) fails"};
}

Outcome hilbert_series_coefficients() {
  const auto F = Field::prime(5);
  const std::vector<unsigned> deg{2, 2};
  const std::vector<std::int64_t> head{1, 3, 4, 4};
  bool ok = true;
  for (unsigned l = 0; l < head.size(); ++l) ok &= regseq::ci_hilbert_coeff(2, deg, l) == head[l];
  const std::vector<HomogPoly> good{mono(F, {2, 0, 0}), mono(F, {0, 2, 0})};
  ok &= regseq::is_regular_hilbert(3, good).verdict && regseq::is_regular_koszul(3, good).verdict;
  for (unsigned l = 0; l <= 6; ++l) ok &= regseq::hilbert_function_quotient(3, good, l) == regseq::ci_hilbert_coeff(2, deg, l);
  const std::vector<HomogPoly> bad{mono(F, {2, 0, 0}), mono(F, {1, 1, 0})};
  for (unsigned l = 0; l < 3; ++l) ok &= regseq::hilbert_function_quotient(3, bad, l) == regseq::ci_hilbert_coeff(2, deg, l);
  const auto q3 = regseq::hilbert_function_quotient(3, bad, 3);
  ok &= q3 == 5 && regseq::ci_hilbert_coeff(2, deg, 3) == 4;
  return {ok, "1,3,4,4 series; regular pair matches for l <= 6; non-regular pair " + std::to_string(q3) +
                  " vs 4 at l = 3"};
}

Outcome d_and_product_bound() {
  bool ok = schedule::D(2, 3) == 2;
  for (std::uint64_t t = 0; t <= 1000; ++t) ok &= schedule::D(1, t) == t;
  int failures = 0;
  for (std::uint64_t r = 1; r <= 8; ++r)
    for (std::uint64_t t = 1; t <= 200; ++t) failures += !schedule::product_bound_check(r, t).holds;
  return {ok && failures == 0, "D(1,t) = t for t <= 1000, D(2,3) = 2; product bound violations for r <= 8, t <= 200: " +
                                   std::to_string(failures)};
}

Outcome schedule_reproduction() {
  const auto s = schedule::turan_schedule(2, {2}, {{1}, {2}});
  const bool values = s.t == 4 && s.r == 9 && s.l == 12 && s.N == 15 && s.m == std::vector<std::uint64_t>{2, 3, 4, 12};
  const bool pre = schedule::lem12_precondition_check(s.N, 3, s.r, s.t, s.l, s.s).holds;
  const bool chain = schedule::turan_binomial_chain_holds(s) && big_binomial(s.t + 4, 3) > BigInt(s.l);
  return {values && pre && chain, "t=" + std::to_string(s.t) + " r=" + std::to_string(s.r) + " l=" +
                                      std::to_string(s.l) + " N=" + std::to_string(s.N) +
                                      ", preconditions " + (pre ? "hold" : "fail") + ", C(t+4,3) > l " +
                                      (chain ? "holds" : "fails")};
}

Outcome point_counting() {
  bool exact = true;
  for (std::uint32_t q : {2u, 3u, 5u, 7u})
    for (std::size_t N = 0; N <= 3; ++N) {
      std::uint64_t expect = 0, pw = 1;
      for (std::size_t i = 0; i <= N; ++i, pw *= q) expect += pw;
      const auto X = geometry::enumerate_projective(N, Field::prime(q));
      std::set<geometry::ProjPoint> distinct(X.points.begin(), X.points.end());
      exact &= X.size() == expect && distinct.size() == expect && geometry::projective_size(N, q) == expect;
    }
  // Complete intersections: regular f of degrees m_i cut a variety of
  // dimension N - r and degree at most prod m_i.
  int checked = 0, violations = 0;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const auto F = Field::prime(q);
    for (std::uint32_t i = 0; i < 60; ++i) {
      Rng rng(0, stream_id(9, static_cast<std::uint16_t>(q), i));
      const std::size_t N = 1 + rng.uniform_below(3);
      const std::size_t r = 1 + rng.uniform_below(N);
      std::vector<HomogPoly> f;
      std::uint64_t degree = 1;
      for (std::size_t j = 0; j < r; ++j) {
        const unsigned m = 1 + static_cast<unsigned>(rng.uniform_below(3));
        degree *= m;
        f.push_back(poly::sample_uniform(F, N + 1, m, rng));
      }
      if (!regseq::is_regular_hilbert(N + 1, f).verdict) continue;
      ++checked;
      const auto count = geometry::variety_count(N, f, F);
      violations += BigInt(count) > geometry::point_count_upper(degree, N - r, q);
    }
  }
  return {exact && violations == 0 && checked > 0,
          std::string("|P^N(F_q)| exact for N <= 3, q in {2,3,5,7}: ") + (exact ? "yes" : "no") +
              "; point-count ceiling violations: " + std::to_string(violations) + " of " +
              std::to_string(checked) + " complete intersections"};
}

Outcome desk_turan() {
  int successes = 0;
  bool bounds = true, naive_ok = false, naive_done = false;
  std::string detail;
  for (std::uint32_t p : {7u, 11u, 13u}) {
    try {
      const auto res = construct::build_turan(desk(p), two_points());
      const auto& v = res.verification;
      ++successes;
      const bool eb = static_cast<double>(v.e_G) >= kTuranEdgeFactor * p * p * p;
      const bool kb = v.realized_k_unordered <= kTuranApexCap && v.realized_k <= v.realized_k_unordered;
      bounds &= eb && kb && v.edge_recheck;
      detail += "p=" + std::to_string(p) + ": e=" + std::to_string(v.e_G) + " K=" + std::to_string(v.realized_k) +
                "/" + std::to_string(v.realized_k_unordered) + "; ";
      if (!naive_done) {
        naive_done = true;
        naive_ok = oracle::max_apex_naive(res.graph, two_points(), {0, 1}) == v.realized_k;
      }
    } catch (const std::exception& e) {
      detail += "p=" + std::to_string(p) + ": " + e.what() + "; ";
    }
  }
  detail += "naive sided check at K+1 on smallest prime: ";
  detail += naive_ok ? "free" : "not free";
  return {successes >= 2 && bounds && naive_ok, detail};
}

Outcome exponent_census() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<double, double>> rows;
  for (std::uint32_t p : {7u, 11u, 13u, 17u}) {
    try {
      const auto res = construct::build_turan(desk(p), two_points());
      rows.push_back({static_cast<double>(res.graph.num_vertices()), static_cast<double>(res.verification.e_G)});
    } catch (const std::exception&) {
    }
  }
  const double secs = seconds_since(t0);
  if (rows.size() < 2) return {false, "fewer than two successful primes"};
  const double slope = hypergraph::exponent_fit(rows);
  return {std::abs(slope - kSlopeTarget) <= kSlopeTolerance && secs < kCensusSeconds,
          "slope " + fmt(slope) + " (target 1.5 +/- 0.2) over " + std::to_string(rows.size()) + " primes, " +
              fmt(secs, 1) + " s"};
}

Outcome desk_zarankiewicz() {
  const auto H = hypergraph::Pattern::from_spec("2,1", "1,1;2,1");
  construct::ZarParams P;
  P.p = 7;
  P.n = 2;
  P.sizes = {3, 3};
  P.m = 3;
  P.r = 2;
  try {
    const auto res = construct::build_zarankiewicz(P, H);
    const auto cert = construct::make_certificate(res);
    const bool verified = construct::verify_certificate(cert.doc, cert.graph).ok;
    const auto e = res.verification.e_G;
    const bool edges = static_cast<double>(e) >= 0.5 * 7 * 3 * 3;
    return {verified && edges && res.verification.meets_apex_cap,
            "e(G)=" + std::to_string(e) + " (need >= 31.5), sided K=" + std::to_string(res.verification.realized_k) +
                ", verify " + (verified ? "ok" : "failed")};
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
}

Outcome freeness_oracle() {
  std::mt19937_64 rng(0);
  int disagreements = 0;
  for (int i = 0; i < kFreenessHosts; ++i) {
    const std::size_t d = 2 + rng() % 2;
    std::vector<std::size_t> sizes(d);
    for (auto& s : sizes) s = 1 + rng() % 6;
    const auto G = oracle::random_host(rng, sizes, 0.2 + 0.15 * static_cast<double>(rng() % 5));
    std::vector<std::size_t> psizes(d - 1);
    for (std::size_t k = 0; k + 1 < d; ++k) psizes[k] = 1 + rng() % std::min<std::size_t>(3, sizes[k]);
    const auto H = oracle::random_pattern(rng, psizes, 4);
    const auto sigma = hypergraph::identity_assignment(d);
    disagreements += hypergraph::max_common_apex(G, H, sigma).K != oracle::max_apex_naive(G, H, sigma);
  }
  return {disagreements == 0, std::to_string(kFreenessHosts) + " hosts, " + std::to_string(disagreements) +
                                  " disagreements"};
}

Outcome determinism() {
  const auto base = fs::temp_directory_path() / ("apexforge_accept_" + std::to_string(::getpid()));
  fs::remove_all(base);
  const std::vector<std::string> common{"construct", "turan", "--p", "7", "--parts", "2", "--edges", "1;2", "--out"};
  auto args = [&](const fs::path& dir) {
    auto a = common;
    a.push_back(dir.string());
    return a;
  };
  const bool built = cli(args(base / "a")) == 0 && cli(args(base / "b")) == 0 && cli(args(base / "c")) == 0;
  const bool same = built && slurp(base / "a" / "certificate.json") == slurp(base / "b" / "certificate.json") &&
                    slurp(base / "a" / "edges.txt") == slurp(base / "b" / "edges.txt");
  const bool fresh = built && cli({"verify", (base / "a" / "certificate.json").string()}) == 0;

  int edge_code = -1, k_code = -1;
  if (built) {
    std::istringstream in(slurp(base / "b" / "edges.txt"));
    std::ostringstream kept;
    std::string line;
    for (int i = 0; std::getline(in, line); ++i)
      if (i != 1) kept << line << '\n';
    std::ofstream(base / "b" / "edges.txt", std::ios::trunc) << kept.str();
    edge_code = cli({"verify", (base / "b" / "certificate.json").string()});

    auto doc = nlohmann::json::parse(slurp(base / "c" / "certificate.json"));
    doc["verification"]["realized_k"] = doc["verification"]["realized_k"].get<int>() - 1;
    std::ofstream(base / "c" / "certificate.json", std::ios::trunc) << doc.dump(2) << '\n';
    k_code = cli({"verify", (base / "c" / "certificate.json").string()});
  }
  fs::remove_all(base);
  return {same && fresh && edge_code == 1 && k_code == 1,
          std::string("identical bytes: ") + (same ? "yes" : "no") + ", edge deletion exit " +
              std::to_string(edge_code) + ", K alteration exit " + std::to_string(k_code)};
}

Outcome select_prime_window() {
  std::vector<std::uint64_t> ns;
  for (double n = 1e3; n <= 1e7; n *= 1.07) ns.push_back(static_cast<std::uint64_t>(n));
  for (std::uint64_t n = 1000; n <= 10'000'000; n *= 10) ns.push_back(n);
  int checked = 0, violations = 0;
  for (auto n : ns)
    for (std::uint64_t C = 1; C <= 20; ++C)
      for (unsigned S = 1; S <= 4; ++S) {
        ++checked;
        try {
          const auto p = schedule::select_prime(n, C, S);
          BigInt lo = C, hi = C;
          for (unsigned i = 0; i < S; ++i) lo *= p, hi *= 2 * p;
          violations += !(gf::is_prime(p) && lo <= BigInt(n) && BigInt(n) <= hi);
        } catch (const std::exception&) {
          ++violations;
        }
      }
  return {violations == 0, std::to_string(checked) + " (n, C, S) triples, " + std::to_string(violations) +
                               " window violations"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"regularity dual oracle", regularity_dual_oracle},
      {"known regularity cases", known_regularity_cases},
      {"Hilbert series coefficients", hilbert_series_coefficients},
      {"D and product bound", d_and_product_bound},
      {"schedule reproduction", schedule_reproduction},
      {"point counting", point_counting},
      {"desk Turan construction", desk_turan},
      {"exponent census", exponent_census},
      {"desk Zarankiewicz construction", desk_zarankiewicz},
      {"freeness oracle equivalence", freeness_oracle},
      {"determinism and tamper detection", determinism},
      {"select_prime window", select_prime_window},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
