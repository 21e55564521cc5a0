#include "apexforge/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <ostream>
#include <set>

#include "apexforge/construct.hpp"
#include "apexforge/error.hpp"
#include "apexforge/geometry.hpp"
#include "apexforge/gf.hpp"
#include "apexforge/hypergraph.hpp"
#include "apexforge/numeric.hpp"
#include "apexforge/poly.hpp"
#include "apexforge/regseq.hpp"
#include "apexforge/rng.hpp"
#include "apexforge/schedule.hpp"

namespace apexforge::selftest {

namespace {

using gf::Element;
using gf::Field;

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void expect(bool cond) { cond ? ++result_.passed : ++result_.failed; }

  // Runs a case; any exception counts as a failure.
  void run(const std::function<bool()>& fn) {
    try {
      expect(fn());
    } catch (const std::exception&) {
      expect(false);
    }
  }

  SuiteResult result() const { return result_; }

 private:
  SuiteResult result_;
};

constexpr std::uint64_t kSeed = 0x5e1f7e57;

SuiteResult gf_suite() {
  Suite s("gf");
  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 2u}, {2u, 3u}, {5u, 2u}, {7u, 1u}, {2u, 4u}}) {
    s.run([&, p = p, e = e] {
      const Field F = Field::extension(p, e);
      for (auto a : F.elements()) {
        if (F.add(a, F.neg(a)) != F.zero()) return false;
        if (a != F.zero() && F.mul(a, F.inv(a)) != F.one()) return false;
        if (F.pow(a, F.order()) != a) return false;
      }
      Rng rng(kSeed, p * 10 + e);
      for (int i = 0; i < 200; ++i) {
        const Element a{static_cast<std::uint32_t>(rng.uniform_below(F.order()))};
        const Element b{static_cast<std::uint32_t>(rng.uniform_below(F.order()))};
        const Element c{static_cast<std::uint32_t>(rng.uniform_below(F.order()))};
        if (F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c))) return false;
      }
      return true;
    });
  }
  s.run([] { return gf::is_prime(101) && !gf::is_prime(91) && !gf::is_prime(1); });
  return s.result();
}

SuiteResult poly_suite() {
  Suite s("poly");
  const Field F = Field::prime(7);
  Rng rng(kSeed, 2);
  for (int i = 0; i < 20; ++i) {
    s.run([&] {
      const auto f = poly::sample_uniform(F, 3, 2, rng);
      const auto g = poly::sample_uniform(F, 3, 3, rng);
      const auto fg = poly::multiply(f, g);
      std::vector<Element> pt{{static_cast<std::uint32_t>(rng.uniform_below(7))},
                              {static_cast<std::uint32_t>(rng.uniform_below(7))},
                              {static_cast<std::uint32_t>(rng.uniform_below(7))}};
      if (poly::evaluate(fg, pt) != F.mul(poly::evaluate(f, pt), poly::evaluate(g, pt))) return false;
      if (poly::evaluate_with(f, poly::monomial_values(F, pt, 2)) != poly::evaluate(f, pt)) return false;
      return poly::homog_from_json(poly::to_json(fg)) == fg;
    });
  }
  s.run([&] {
    const auto g = poly::sample_uniform_multi(F, {{3, 2}, {2, 1}}, rng);
    return poly::multi_from_json(poly::to_json(g)) == g;
  });
  return s.result();
}

SuiteResult geometry_suite() {
  Suite s("geometry");
  for (std::size_t N = 0; N <= 2; ++N)
    for (std::uint32_t q : {2u, 3u, 5u}) {
      s.run([&] {
        const auto all = geometry::enumerate_projective(N, Field::prime(q));
        return all.size() == geometry::projective_size(N, q);
      });
    }
  const Field F = Field::prime(5);
  Rng rng(kSeed, 3);
  for (int i = 0; i < 10; ++i) {
    s.run([&] {
      const std::vector<poly::HomogPoly> f{poly::sample_uniform(F, 4, 2, rng)};
      const auto V = geometry::variety_points(3, f, F);
      if (V.size() != geometry::variety_count(3, f, F)) return false;
      for (const auto& pt : V.points)
        if (poly::evaluate(f[0], pt.coords()) != F.zero()) return false;
      if (f[0].is_zero()) return true;
      return BigInt(V.size()) <= geometry::point_count_upper(2, 2, 5);
    });
  }
  return s.result();
}

SuiteResult regseq_suite(const Faults& faults) {
  Suite s("regseq");
  const Field F = Field::prime(5);
  Rng rng(kSeed, 4);
  for (int i = 0; i < 40; ++i) {
    s.run([&] {
      const std::size_t N = 1 + rng.uniform_below(3);
      const std::size_t r = 1 + rng.uniform_below(std::min<std::size_t>(3, N + 1));
      std::vector<poly::HomogPoly> f;
      for (std::size_t j = 0; j < r; ++j)
        f.push_back(poly::sample_uniform(F, N + 1, 1 + static_cast<unsigned>(rng.uniform_below(2)), rng));
      auto h = regseq::is_regular_hilbert(N + 1, f);
      if (faults.flip_hilbert_verdict) h.verdict = !h.verdict;
      const auto k = regseq::is_regular_koszul(N + 1, f);
      if (h.verdict != k.verdict) return false;
      return k.verdict || regseq::revalidate_witness(N + 1, f, k);
    });
  }
  s.run([&] {
    for (std::size_t N = 1; N <= 3; ++N)
      for (std::size_t r = 0; r <= N; ++r) {
        std::vector<poly::HomogPoly> xs;
        for (std::size_t i = 0; i <= r; ++i) xs.push_back(poly::HomogPoly::variable(F, N + 1, i));
        auto h = regseq::is_regular_hilbert(N + 1, xs);
        if (faults.flip_hilbert_verdict) h.verdict = !h.verdict;
        if (!h.verdict || !regseq::is_regular_koszul(N + 1, xs).verdict) return false;
      }
    return true;
  });
  for (int i = 0; i < 10; ++i) {
    s.run([&] {
      geometry::PointSet X;
      X.ambient_dim = 2;
      X.field = F;
      const auto all = geometry::enumerate_projective(2, F);
      std::set<std::size_t> pick;
      const std::size_t n = 1 + rng.uniform_below(7);
      while (pick.size() < n) pick.insert(rng.uniform_below(all.size()));
      for (auto j : pick) X.points.push_back(all.points[j]);
      std::size_t prev = 0;
      for (unsigned m = 0; m <= n; ++m) {
        const std::size_t hm = regseq::hilbert_function_points(X, m);
        if (hm > std::min<std::uint64_t>(X.size(), binomial(2 + m, m)) || hm < prev) return false;
        if (m + 1 >= X.size() && hm != X.size()) return false;
        prev = hm;
      }
      return true;
    });
  }
  return s.result();
}

SuiteResult schedule_suite() {
  Suite s("schedule");
  s.run([] {
    for (std::uint64_t r = 1; r <= 5; ++r)
      for (std::uint64_t t = 0; t <= 60; ++t) {
        const auto m = schedule::D(r, t);
        if (big_binomial(m + r, r) <= t) return false;
        if (m > 0 && big_binomial(m - 1 + r, r) > t) return false;
      }
    return true;
  });
  s.run([] {
    for (std::uint64_t r = 1; r <= 4; ++r)
      for (std::uint64_t t = 1; t <= 50; ++t)
        if (!schedule::product_bound_check(r, t).holds) return false;
    return true;
  });
  s.run([] {
    const auto sc = schedule::turan_schedule(2, {2}, {{1}, {2}});
    const bool expected = sc.t == 4 && sc.r == 9 && sc.l == 12 && sc.N == 15 &&
                          sc.m == std::vector<std::uint64_t>{2, 3, 4, 12};
    return expected && sc.N == 2 * sc.r - 3 && schedule::turan_binomial_chain_holds(sc) &&
           schedule::lem12_precondition_check(sc.N, 3, sc.r, sc.t, sc.l, sc.s).holds;
  });
  s.run([] {
    for (std::uint64_t S = 1; S <= 6; ++S)
      for (std::uint64_t m = 1; m <= 6; ++m) {
        const auto z = schedule::zarankiewicz_schedule(S, m);
        const BigInt avail = big_binomial(z.r + m + 1, m) - 1;
        if (BigInt(2 * S * z.t) > avail || avail >= BigInt(2 * S * (z.t + 1))) return false;
      }
    return true;
  });
  s.run([] {
    for (std::uint64_t n : {1000ull, 54321ull, 1000000ull})
      for (std::uint64_t C = 1; C <= 5; ++C)
        for (unsigned S = 1; S <= 3; ++S) {
          const auto p = schedule::select_prime(n, C, S);
          BigInt lo = C, hi = C;
          for (unsigned i = 0; i < S; ++i) {
            lo *= p;
            hi *= 2 * p;
          }
          if (!gf::is_prime(p) || lo > n || BigInt(n) > hi) return false;
        }
    return true;
  });
  return s.result();
}

// Exhaustive common-apex maximum over all injective part-respecting maps.
std::size_t naive_max_apex(const hypergraph::PartiteHypergraph& G, const hypergraph::Pattern& H) {
  const std::size_t parts = H.num_parts();
  const std::size_t apex = G.d() - 1;
  std::vector<std::vector<hypergraph::Vertex>> phi(parts);
  std::size_t best = 0;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == parts) {
      std::size_t count = 0;
      for (hypergraph::Vertex z = 0; z < G.part_sizes()[apex]; ++z) {
        bool all = true;
        for (const auto& e : H.edges()) {
          std::vector<hypergraph::Vertex> tuple;
          for (std::size_t k = 0; k < parts; ++k) tuple.push_back(phi[k][e[k]]);
          tuple.push_back(z);
          if (!G.has_edge(tuple)) {
            all = false;
            break;
          }
        }
        if (all) ++count;
      }
      best = std::max(best, count);
      return;
    }
    if (phi[i].size() == H.part_sizes()[i]) {
      self(self, i + 1);
      return;
    }
    for (hypergraph::Vertex v = 0; v < G.part_sizes()[i]; ++v) {
      if (std::find(phi[i].begin(), phi[i].end(), v) != phi[i].end()) continue;
      phi[i].push_back(v);
      self(self, i);
      phi[i].pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

SuiteResult hypergraph_suite() {
  Suite s("hypergraph");
  Rng rng(kSeed, 6);
  for (int i = 0; i < 30; ++i) {
    s.run([&] {
      std::vector<std::size_t> sizes{2 + rng.uniform_below(3), 2 + rng.uniform_below(3), 1 + rng.uniform_below(5)};
      std::vector<std::vector<hypergraph::Vertex>> edges;
      for (hypergraph::Vertex a = 0; a < sizes[0]; ++a)
        for (hypergraph::Vertex b = 0; b < sizes[1]; ++b)
          for (hypergraph::Vertex c = 0; c < sizes[2]; ++c)
            if (rng.uniform_below(3) != 0) edges.push_back({a, b, c});
      const hypergraph::PartiteHypergraph G(sizes, edges);
      const auto H = hypergraph::Pattern({2, 1 + rng.uniform_below(2)}, {{0, 0}, {1, 0}});
      const auto fast = hypergraph::max_common_apex(G, H, hypergraph::identity_assignment(3));
      if (fast.K != naive_max_apex(G, H)) return false;
      const std::vector<hypergraph::Vertex> w{0, 0};
      std::vector<hypergraph::Vertex> scan;
      for (const auto& e : edges)
        if (e[0] == 0 && e[1] == 0) scan.push_back(e[2]);
      return hypergraph::codegree(G, w, 2) == scan;
    });
  }
  s.run([] {
    const std::vector<std::pair<double, double>> rows{{10, 31.6227766}, {100, 1000}, {1000, 31622.7766}};
    return std::abs(hypergraph::exponent_fit(rows) - 1.5) < 1e-6;
  });
  return s.result();
}

SuiteResult construct_suite() {
  Suite s("construct");
  s.run([] {
    const Field F = Field::prime(7);
    const auto iv = construct::build_independent_variety(3, 3, 1, 2, F, 0, 0, {});
    return iv.hilbert.verdict && iv.koszul.verdict && iv.independence.verdict && iv.points.size() > 0;
  });
  s.run([] {
    construct::TuranParams P;
    P.p = 7;
    const auto H = hypergraph::Pattern::from_spec("2", "1;2");
    const auto res = construct::build_turan(P, H);
    const auto cert = construct::make_certificate(res);
    const auto again = construct::make_certificate(construct::build_turan(P, H));
    return res.verification.edge_recheck && cert.doc == again.doc &&
           construct::verify_certificate(cert.doc, cert.graph).ok;
  });
  s.run([] {
    construct::TuranParams P;
    P.p = 7;
    P.force_zero_g = true;
    P.budgets.retries = 2;
    try {
      construct::build_turan(P, hypergraph::Pattern::from_spec("2", "1;2"));
    } catch (const BudgetExceeded&) {
      return true;
    }
    return false;
  });
  return s.result();
}

}  // namespace

std::vector<SuiteResult> run_all(std::ostream& out, const Faults& faults) {
  std::vector<SuiteResult> results;
  results.push_back(gf_suite());
  results.push_back(poly_suite());
  results.push_back(geometry_suite());
  results.push_back(regseq_suite(faults));
  results.push_back(schedule_suite());
  results.push_back(hypergraph_suite());
  results.push_back(construct_suite());
  for (const auto& r : results)
    out << r.name << ": " << r.passed << " passed, " << r.failed << " failed\n";
  return results;
}

}  // namespace apexforge::selftest
