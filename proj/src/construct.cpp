#include "apexforge/construct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "apexforge/error.hpp"
#include "apexforge/parallel.hpp"
#include "apexforge/rng.hpp"
#include "construct_detail.hpp"

namespace apexforge::construct {

using hypergraph::Vertex;

namespace detail {

std::vector<std::vector<Vertex>> vanishing_edges(const poly::MultiHomogPoly& g,
                                                 const std::vector<geometry::PointSet>& parts,
                                                 std::size_t last_limit) {
  const std::size_t d = parts.size();
  if (d < 2 || g.groups().size() != d) throw InvalidInput("g and the parts disagree on d");
  const auto& F = g.field();
  last_limit = std::min(last_limit, parts.back().size());

  std::vector<std::vector<std::vector<gf::Element>>> mons(d);
  for (std::size_t k = 0; k < d; ++k) {
    mons[k].reserve(parts[k].size());
    for (const auto& pt : parts[k].points)
      mons[k].push_back(poly::monomial_values(F, pt.coords(), g.groups()[k].degree));
  }

  const std::size_t n0 = parts[0].size();
  std::vector<std::vector<std::vector<Vertex>>> per_first(n0);
  parallel_tasks(n0, [&](std::size_t i0) {
    auto& out = per_first[i0];
    std::vector<Vertex> tuple(d);
    tuple[0] = static_cast<Vertex>(i0);
    auto rec = [&](auto&& self, std::size_t k, const poly::MultiHomogPoly& cur) -> void {
      if (k == d - 1) {
        const poly::HomogPoly form = poly::last_group_form(cur);
        for (std::size_t z = 0; z < last_limit; ++z)
          if (poly::evaluate_with(form, mons[k][z]).value == 0) {
            tuple[k] = static_cast<Vertex>(z);
            out.push_back(tuple);
          }
        return;
      }
      for (std::size_t i = 0; i < parts[k].size(); ++i) {
        tuple[k] = static_cast<Vertex>(i);
        self(self, k + 1, poly::contract_leading(cur, mons[k][i]));
      }
    };
    rec(rec, 1, poly::contract_leading(g, mons[0][i0]));
  });

  std::vector<std::vector<Vertex>> edges;
  for (auto& v : per_first)
    for (auto& e : v) edges.push_back(std::move(e));
  return edges;
}

bool edges_vanish(const poly::MultiHomogPoly& g, const std::vector<geometry::PointSet>& parts,
                  const hypergraph::PartiteHypergraph& G) {
  const std::size_t d = parts.size();
  if (G.d() != d || g.groups().size() != d) return false;
  for (std::size_t k = 0; k < d; ++k)
    if (G.part_sizes()[k] != parts[k].size()) return false;
  std::vector<std::vector<gf::Element>> pts(d);
  for (std::size_t i = 0; i < G.edge_count(); ++i) {
    auto e = G.edge(i);
    for (std::size_t k = 0; k < d; ++k) pts[k] = parts[k].points[e[k]].coords();
    if (poly::evaluate_multi(g, pts).value != 0) return false;
  }
  return true;
}

geometry::PointSet standard_points(std::size_t n, std::size_t count, const gf::Field& F) {
  if (count > n + 1) throw InvalidInput("at most n + 1 linearly independent points exist in P^n");
  geometry::PointSet X;
  X.ambient_dim = n;
  X.field = F;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<gf::Element> v(n + 1, F.zero());
    v[i] = F.one();
    X.points.push_back(geometry::canonicalize(v, F));
  }
  return X;
}

geometry::PointSet pad_points(const geometry::PointSet& V, std::size_t N, std::size_t total,
                              const gf::Field& F, std::uint64_t budget) {
  if (V.size() > total) throw InvalidInput("variety has more points than the padded part");
  geometry::PointSet out = V;
  out.provenance.reset();
  out.ambient_dim = N;
  out.field = F;
  if (V.size() == total) return out;
  if (geometry::projective_size(N, F.order()) < total)
    throw InvalidInput("projective space has fewer points than the padded part");
  std::vector<geometry::ProjPoint> sorted = V.points;
  std::sort(sorted.begin(), sorted.end());
  const auto all = geometry::enumerate_projective(N, F, budget);
  for (const auto& pt : all.points) {
    if (out.size() == total) break;
    if (!std::binary_search(sorted.begin(), sorted.end(), pt)) out.points.push_back(pt);
  }
  return out;
}

BigInt apex_cap(unsigned m, std::size_t e, const std::vector<unsigned>& degrees) {
  BigInt cap = 1;
  for (std::size_t i = 0; i < e; ++i) cap *= m;
  for (auto mj : degrees) cap *= mj;
  return cap;
}

hypergraph::PartiteHypergraph host_from(const std::vector<geometry::PointSet>& parts,
                                        std::vector<std::vector<Vertex>> edges) {
  std::vector<std::size_t> sizes;
  for (const auto& X : parts) sizes.push_back(X.size());
  return hypergraph::PartiteHypergraph(std::move(sizes), std::move(edges));
}

nlohmann::json pattern_json(const hypergraph::Pattern& H) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : H.edges()) {
    std::vector<std::size_t> one_based;
    for (auto v : e) one_based.push_back(v + 1);
    edges.push_back(one_based);
  }
  return {{"part_sizes", H.part_sizes()}, {"edges", edges}};
}

hypergraph::Pattern pattern_from_json(const nlohmann::json& j) {
  auto sizes = j.at("part_sizes").get<std::vector<std::size_t>>();
  std::vector<std::vector<Vertex>> edges;
  for (const auto& e : j.at("edges")) {
    std::vector<Vertex> z;
    for (const auto& v : e) {
      const auto x = v.get<std::uint64_t>();
      if (x == 0) throw InvalidInput("pattern indices are 1-based");
      z.push_back(static_cast<Vertex>(x - 1));
    }
    edges.push_back(std::move(z));
  }
  return hypergraph::Pattern(std::move(sizes), std::move(edges));
}


Verification measure_turan(const hypergraph::PartiteHypergraph& G, const hypergraph::Pattern& H,
                           const poly::MultiHomogPoly& g, const std::vector<geometry::PointSet>& V,
                           const std::vector<std::size_t>& f_sizes, const TuranParams& P) {
  const std::size_t d = H.uniformity();
  const std::size_t S = H.edge_count();
  const auto unordered = hypergraph::is_apex_free(G, H, 0, hypergraph::FreenessMode::unordered);
  const auto sided = hypergraph::is_apex_free(G, H, 0, hypergraph::FreenessMode::sided);
  Verification v;
  v.edge_recheck = edges_vanish(g, V, G);
  v.e_G = G.edge_count();
  v.realized_k = sided.K;
  v.realized_k_unordered = unordered.K;
  v.witness = unordered.witness;
  v.half_p_power = 0.5 * std::pow(static_cast<double>(P.p), static_cast<double>(d * S) - 1);
  v.meets_edge_bound = static_cast<double>(v.e_G) >= v.half_p_power;
  v.apex_cap = apex_cap(P.m, P.r + S, P.degrees);
  v.meets_apex_cap = BigInt(unordered.K) <= v.apex_cap;

  // Point-count ceilings for V(f_k) (dimension N - r) and V_k (dimension N - r - t).
  const BigInt deg_f = apex_cap(P.m, P.r, {});
  const BigInt deg_fh = apex_cap(P.m, P.r, P.degrees);
  const auto f_cap = geometry::point_count_upper(static_cast<std::uint64_t>(deg_f), P.N - P.r, P.p);
  const auto v_cap = geometry::point_count_upper(static_cast<std::uint64_t>(deg_fh), P.N - P.r - P.t, P.p);
  v.lang_weil_ok = f_sizes.size() == V.size();
  for (std::size_t k = 0; k < V.size() && v.lang_weil_ok; ++k)
    v.lang_weil_ok = BigInt(f_sizes[k]) <= f_cap && BigInt(V[k].size()) <= v_cap;
  v.exponent_target = static_cast<double>(d) - 1.0 / static_cast<double>(S);
  return v;
}

Verification measure_zar(const hypergraph::PartiteHypergraph& G, const hypergraph::Pattern& H,
                         const poly::MultiHomogPoly& g, const std::vector<geometry::PointSet>& parts,
                         std::size_t variety_size, const std::vector<unsigned>& degrees, std::size_t N,
                         std::size_t r, const ZarParams& P) {
  const std::size_t S = H.edge_count();
  const auto sided = hypergraph::is_apex_free(G, H, 0, hypergraph::FreenessMode::sided);
  const auto unordered = hypergraph::is_apex_free(G, H, 0, hypergraph::FreenessMode::unordered);
  Verification v;
  v.edge_recheck = edges_vanish(g, parts, G);
  for (std::size_t i = 0; i < G.edge_count() && v.edge_recheck; ++i)
    v.edge_recheck = G.edge(i).back() < variety_size;
  v.e_G = G.edge_count();
  v.realized_k = sided.K;
  v.realized_k_unordered = unordered.K;
  v.witness = sided.witness;
  v.half_p_power = 0.5 * std::pow(static_cast<double>(P.p), static_cast<double>(S) - 1);
  for (auto ni : P.sizes) v.half_p_power *= static_cast<double>(ni);
  v.meets_edge_bound = static_cast<double>(v.e_G) >= v.half_p_power;
  v.apex_cap = apex_cap(P.m, S, degrees);
  v.meets_apex_cap = BigInt(sided.K) <= v.apex_cap;
  const BigInt deg_h = apex_cap(1, 0, degrees);
  v.lang_weil_ok = BigInt(variety_size) <=
                   geometry::point_count_upper(static_cast<std::uint64_t>(deg_h), N - r, P.p);
  v.exponent_target = 1.0 - 1.0 / static_cast<double>(S);
  return v;
}

}  // namespace detail

namespace {

std::string describe(const FailureCounts& c) {
  std::ostringstream os;
  os << "nonregular=" << c.nonregular << " dependent=" << c.dependent << " empty=" << c.empty
     << " edge_bound=" << c.edge_bound << " apex_cap=" << c.apex_cap;
  return os.str();
}

[[noreturn]] void exhausted(const std::string& stage, std::uint32_t retries, const FailureCounts& c) {
  throw BudgetExceeded(stage + ": no sample accepted in " + std::to_string(retries) + " attempts (" +
                       describe(c) + ")");
}

std::vector<poly::HomogPoly> concat(const std::vector<poly::HomogPoly>& a, const std::vector<poly::HomogPoly>& b) {
  std::vector<poly::HomogPoly> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<poly::VariableGroup> uniform_groups(std::size_t d, std::size_t num_vars, unsigned m) {
  return std::vector<poly::VariableGroup>(d, poly::VariableGroup{num_vars, m});
}

BigInt big_pow(std::uint64_t b, std::uint64_t e) {
  BigInt out = 1;
  for (std::uint64_t i = 0; i < e; ++i) out *= b;
  return out;
}

}  // namespace

nlohmann::json to_json(const FailureCounts& c) {
  return {{"nonregular", c.nonregular},
          {"dependent", c.dependent},
          {"empty", c.empty},
          {"edge_bound", c.edge_bound},
          {"apex_cap", c.apex_cap}};
}

nlohmann::json to_json(const Verification& v) {
  nlohmann::json j;
  j["edge_recheck"] = v.edge_recheck;
  j["e_G"] = v.e_G;
  j["realized_k"] = v.realized_k;
  j["realized_k_unordered"] = v.realized_k_unordered;
  j["witness"] = v.witness ? hypergraph::to_json(*v.witness) : nlohmann::json(nullptr);
  j["bounds"] = {{"half_p_power", v.half_p_power},
                 {"codegree_cap", v.apex_cap.str()},
                 {"meets_edge_bound", v.meets_edge_bound},
                 {"meets_apex_cap", v.meets_apex_cap}};
  j["lang_weil_ok"] = v.lang_weil_ok;
  j["exponent_target"] = v.exponent_target;
  return j;
}

IndependentVariety build_independent_variety(std::size_t N, unsigned m, std::size_t r, std::size_t s,
                                             const gf::Field& F, std::uint64_t seed, std::uint16_t part,
                                             const Budgets& budgets) {
  if (r < 1 || r > N) throw InvalidInput("build_independent_variety needs 1 <= r <= N");
  if (m < 1) throw InvalidInput("build_independent_variety needs m >= 1");
  if (!F.is_prime_field()) throw InvalidInput("constructions run over prime fields");
  IndependentVariety out;
  for (std::uint32_t attempt = 0; attempt < budgets.retries; ++attempt) {
    out.attempts = attempt + 1;
    Rng rng(seed, stream_id(kStageF, part, attempt));
    std::vector<poly::HomogPoly> f;
    for (std::size_t j = 0; j < r; ++j) f.push_back(poly::sample_uniform(F, N + 1, m, rng));

    auto hilbert = regseq::is_regular_hilbert(N + 1, f);
    auto koszul = regseq::is_regular_koszul(N + 1, f);
    if (hilbert.verdict != koszul.verdict)
      throw VerificationError("regularity criteria disagree on a sampled sequence");
    if (!hilbert.verdict) {
      ++out.failures.nonregular;
      continue;
    }
    auto points = geometry::variety_points(N, f, F, budgets.enumeration);
    if (points.size() == 0) {
      ++out.failures.empty;
      continue;
    }
    auto independence = regseq::is_swise_independent(points, s, m);
    if (!independence.verdict) {
      ++out.failures.dependent;
      continue;
    }
    out.f = std::move(f);
    out.points = std::move(points);
    out.hilbert = std::move(hilbert);
    out.koszul = std::move(koszul);
    out.independence = std::move(independence);
    return out;
  }
  exhausted("independent variety (part " + std::to_string(part) + ")", budgets.retries, out.failures);
}


TuranResult build_turan(const TuranParams& P, const hypergraph::Pattern& H) {
  const gf::Field F = gf::Field::prime(P.p);
  const std::size_t d = H.uniformity();
  const std::size_t S = H.edge_count();
  if (P.r < 1) throw InvalidInput("r must be at least 1");
  if (P.m < 1) throw InvalidInput("m must be at least 1");
  if (P.degrees.size() != P.t) throw InvalidInput("expected t = " + std::to_string(P.t) + " degrees");
  for (auto mj : P.degrees)
    if (mj < 1) throw InvalidInput("degrees must be positive");
  if (P.N != S + P.r + P.t)
    throw InvalidInput("need N = S + r + t (N = " + std::to_string(P.N) + ", S = " + std::to_string(S) +
                       ", r = " + std::to_string(P.r) + ", t = " + std::to_string(P.t) + ")");
  const std::size_t s = H.max_part_size();

  TuranInstance inst{P, H, {}, {}, {}, {}, {}, {}, poly::MultiHomogPoly(F, uniform_groups(d, P.N + 1, P.m)), 0,
                     {}};

  for (std::size_t k = 0; k < d; ++k) {
    const auto part = static_cast<std::uint16_t>(k);
    inst.f_parts.push_back(build_independent_variety(P.N, P.m, P.r, s, F, P.seed, part, P.budgets));
    const auto& f = inst.f_parts.back().f;

    FailureCounts fails;
    bool accepted = false;
    for (std::uint32_t attempt = 0; attempt < P.budgets.retries && !accepted; ++attempt) {
      Rng rng(P.seed, stream_id(kStageH, part, attempt));
      std::vector<poly::HomogPoly> h;
      for (auto mj : P.degrees) h.push_back(poly::sample_uniform(F, P.N + 1, mj, rng));
      const auto fh = concat(f, h);
      auto reg = regseq::is_regular_hilbert(P.N + 1, fh);
      if (!reg.verdict) {
        ++fails.nonregular;
        continue;
      }
      auto V = geometry::variety_points(P.N, fh, F, P.budgets.enumeration);
      if (V.size() == 0) {
        ++fails.empty;
        continue;
      }
      inst.h.push_back(std::move(h));
      inst.fh_regularity.push_back(std::move(reg));
      inst.h_attempts.push_back(attempt + 1);
      inst.V.push_back(std::move(V));
      accepted = true;
    }
    if (!accepted) exhausted("h forms (part " + std::to_string(k) + ")", P.budgets.retries, fails);
    inst.h_failures.push_back(fails);
  }

  const double half = 0.5 * std::pow(static_cast<double>(P.p), static_cast<double>(d * S) - 1);
  const BigInt cap = detail::apex_cap(P.m, P.r + S, P.degrees);

  for (std::uint32_t attempt = 0; attempt < P.budgets.retries; ++attempt) {
    inst.g_attempts = attempt + 1;
    Rng rng(P.seed, stream_id(kStageG, 0, attempt));
    auto g = P.force_zero_g ? poly::MultiHomogPoly(F, uniform_groups(d, P.N + 1, P.m))
                            : poly::sample_uniform_multi(F, uniform_groups(d, P.N + 1, P.m), rng);
    auto edges = detail::vanishing_edges(g, inst.V, inst.V.back().size());
    if (static_cast<double>(edges.size()) < half) {
      ++inst.g_failures.edge_bound;
      continue;
    }
    auto G = detail::host_from(inst.V, std::move(edges));
    const auto unordered = hypergraph::is_apex_free(G, H, 0, hypergraph::FreenessMode::unordered);
    if (BigInt(unordered.K) > cap) {
      ++inst.g_failures.apex_cap;
      continue;
    }
    inst.g = std::move(g);
    std::vector<std::size_t> f_sizes;
    for (const auto& fp : inst.f_parts) f_sizes.push_back(fp.points.size());
    Verification v = detail::measure_turan(G, H, inst.g, inst.V, f_sizes, P);
    if (!v.edge_recheck) throw VerificationError("edge recheck failed on the accepted instance");
    return TuranResult{std::move(inst), std::move(G), std::move(v)};
  }
  exhausted("g form", P.budgets.retries, inst.g_failures);
}

ZarResult build_zarankiewicz(const ZarParams& P, const hypergraph::Pattern& H) {
  const gf::Field F = gf::Field::prime(P.p);
  const std::size_t d = H.uniformity();
  const std::size_t S = H.edge_count();
  if (P.sizes.size() != d - 1) throw InvalidInput("expected d - 1 = " + std::to_string(d - 1) + " part sizes");
  if (P.m < 1) throw InvalidInput("m must be at least 1");
  for (std::size_t i = 0; i + 1 < d; ++i) {
    if (P.sizes[i] > P.n + 1)
      throw InvalidInput("part " + std::to_string(i + 1) + " needs n_i <= n + 1 independent points");
    if (P.sizes[i] < H.part_sizes()[i])
      throw InvalidInput("pattern part " + std::to_string(i + 1) + " is larger than its host part");
  }

  ZarInstance inst{P, H, 0, {}, {}, 0, poly::MultiHomogPoly(F, uniform_groups(1, 1, 0)), {}, {}, 0, {}};
  auto& Q = inst.params;
  if (!Q.r) {
    std::size_t r = 1;
    while (r * r < S) ++r;
    Q.r = r;
  }
  const std::size_t r = *Q.r;
  if (r < 1) throw InvalidInput("r must be at least 1");
  inst.N = r + S;
  if (!Q.degrees) {
    std::vector<std::uint64_t> n(P.sizes.begin(), P.sizes.end());
    std::vector<std::uint64_t> s(H.part_sizes().begin(), H.part_sizes().end());
    std::vector<unsigned> deg;
    for (auto mj : schedule::zarankiewicz_degrees(r, P.p, n, s)) deg.push_back(static_cast<unsigned>(mj));
    Q.degrees = deg;
  }
  inst.degrees = *Q.degrees;
  if (inst.degrees.size() != r) throw InvalidInput("expected r = " + std::to_string(r) + " degrees");
  for (auto mj : inst.degrees)
    if (mj < 1) throw InvalidInput("degrees must be positive");
  if (!Q.n_d) {
    BigInt nd = 2 * big_pow(P.p, S);
    for (auto mj : inst.degrees) nd *= mj;
    if (nd > BigInt(std::numeric_limits<std::uint32_t>::max())) throw InvalidInput("default n_d is too large");
    Q.n_d = static_cast<std::size_t>(nd);
  }
  const std::size_t n_d = *Q.n_d;

  std::vector<geometry::PointSet> Y;
  for (std::size_t i = 0; i + 1 < d; ++i) Y.push_back(detail::standard_points(P.n, P.sizes[i], F));

  auto groups = uniform_groups(d - 1, P.n + 1, P.m);
  groups.push_back({inst.N + 1, P.m});

  double half = 0.5 * std::pow(static_cast<double>(P.p), static_cast<double>(S) - 1);
  for (auto ni : P.sizes) half *= static_cast<double>(ni);
  const BigInt cap = detail::apex_cap(P.m, S, inst.degrees);

  for (std::uint32_t attempt = 0; attempt < P.budgets.retries; ++attempt) {
    inst.attempts = attempt + 1;
    Rng grng(P.seed, stream_id(kStageZarG, 0, attempt));
    Rng hrng(P.seed, stream_id(kStageZarH, 0, attempt));
    auto g = poly::sample_uniform_multi(F, groups, grng);
    std::vector<poly::HomogPoly> h;
    for (auto mj : inst.degrees) h.push_back(poly::sample_uniform(F, inst.N + 1, mj, hrng));

    auto reg = regseq::is_regular_hilbert(inst.N + 1, h);
    if (!reg.verdict) {
      ++inst.failures.nonregular;
      continue;
    }
    auto V = geometry::variety_points(inst.N, h, F, P.budgets.enumeration);
    if (V.size() == 0) {
      ++inst.failures.empty;
      continue;
    }
    if (V.size() > n_d)
      throw InvalidInput("|V(h)(F_p)| = " + std::to_string(V.size()) + " exceeds n_d = " + std::to_string(n_d));
    auto parts = Y;
    parts.push_back(detail::pad_points(V, inst.N, n_d, F, P.budgets.enumeration));
    auto edges = detail::vanishing_edges(g, parts, V.size());
    if (static_cast<double>(edges.size()) < half) {
      ++inst.failures.edge_bound;
      continue;
    }
    auto G = detail::host_from(parts, std::move(edges));
    const auto sided = hypergraph::is_apex_free(G, H, 0, hypergraph::FreenessMode::sided);
    if (BigInt(sided.K) > cap) {
      ++inst.failures.apex_cap;
      continue;
    }
    Verification v = detail::measure_zar(G, H, g, parts, V.size(), inst.degrees, inst.N, r, P);
    if (!v.edge_recheck) throw VerificationError("edge recheck failed on the accepted instance");

    inst.variety_size = V.size();
    inst.Y = std::move(parts);
    inst.g = std::move(g);
    inst.h = std::move(h);
    inst.h_regularity = std::move(reg);
    return ZarResult{std::move(inst), std::move(G), std::move(v)};
  }
  exhausted("Zarankiewicz (g, h) pair", P.budgets.retries, inst.failures);
}

}  // namespace apexforge::construct
