#include "apexforge/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "apexforge/error.hpp"
#include "apexforge/parallel.hpp"

namespace apexforge::geometry {
namespace {

// Position of a point in enumerate_projective order, decoded back to
// coordinates. Chart i holds q^{N-i} points.
class ProjectiveIndexer {
 public:
  ProjectiveIndexer(std::size_t N, std::uint64_t q) : N_(N), q_(q) {
    for (std::size_t i = 0; i <= N; ++i) {
      auto c = checked_pow(q, static_cast<unsigned>(N - i));
      if (!c) throw BudgetExceeded("projective space too large to enumerate");
      chart_sizes_.push_back(*c);
    }
  }

  void decode(std::uint64_t idx, std::vector<gf::Element>& out) const {
    out.assign(N_ + 1, gf::Element{0});
    std::size_t chart = 0;
    while (idx >= chart_sizes_[chart]) idx -= chart_sizes_[chart++];
    out[chart] = gf::Element{1};
    for (std::size_t k = N_; k > chart; --k) {
      out[k] = gf::Element{static_cast<std::uint32_t>(idx % q_)};
      idx /= q_;
    }
  }

 private:
  std::size_t N_;
  std::uint64_t q_;
  std::vector<std::uint64_t> chart_sizes_;
};

std::uint64_t checked_total(std::size_t N, std::uint64_t q, std::uint64_t budget) {
  std::uint64_t total;
  try {
    total = projective_size(N, q);
  } catch (const InvalidInput&) {
    throw BudgetExceeded("projective space size overflows");
  }
  if (total > budget)
    throw BudgetExceeded("enumerating P^" + std::to_string(N) + " over a field of order " + std::to_string(q) +
                         " visits " + std::to_string(total) + " points, budget " + std::to_string(budget));
  return total;
}

void check_forms(std::size_t N, std::span<const poly::HomogPoly> polys) {
  for (const auto& f : polys)
    if (f.num_vars() != N + 1) throw InvalidInput("form does not live in the ambient ring");
}

// Forms re-expressed over F (coefficients are GF(p) encodings, which are
// valid in every extension).
std::vector<poly::HomogPoly> lift(std::span<const poly::HomogPoly> polys, const gf::Field& F) {
  std::vector<poly::HomogPoly> out;
  for (const auto& f : polys) {
    const bool same = f.field() == F;
    const bool base = f.field().is_prime_field() && f.field().characteristic() == F.characteristic();
    if (!same && !base) throw InvalidInput("form is not defined over the enumeration field");
    out.emplace_back(F, f.num_vars(), f.degree(), f.coeffs());
  }
  return out;
}

// Scans P^N(F) in chunks; keep(point) decides membership. Per-chunk results
// are concatenated in chunk order.
template <class Keep>
std::vector<std::vector<std::uint64_t>> scan(std::size_t N, const gf::Field& F, std::uint64_t budget, Keep keep) {
  const std::uint64_t total = checked_total(N, F.order(), budget);
  const ProjectiveIndexer indexer(N, F.order());
  std::vector<std::vector<std::uint64_t>> hits(chunk_count(total));
  parallel_chunks(total, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::vector<gf::Element> pt;
    for (std::size_t i = begin; i < end; ++i) {
      indexer.decode(i, pt);
      if (keep(pt)) hits[chunk].push_back(i);
    }
  });
  return hits;
}

bool vanishes(std::span<const poly::HomogPoly> polys, std::span<const gf::Element> pt) {
  for (const auto& f : polys)
    if (poly::evaluate(f, pt).value != 0) return false;
  return true;
}

}  // namespace

ProjPoint ProjPoint::canonicalize(std::span<const gf::Element> v, const gf::Field& F) {
  if (v.empty()) throw InvalidInput("point has no coordinates");
  for (auto c : v) F.check(c);
  std::size_t lead = 0;
  while (lead < v.size() && v[lead].value == 0) ++lead;
  if (lead == v.size()) throw InvalidInput("the zero vector is not a projective point");
  const gf::Element s = F.inv(v[lead]);
  std::vector<gf::Element> out(v.begin(), v.end());
  for (std::size_t i = lead; i < out.size(); ++i) out[i] = F.mul(out[i], s);
  return ProjPoint(std::move(out));
}

std::uint64_t projective_size(std::size_t N, std::uint64_t q) {
  if (q < 2) throw InvalidInput("field order must be at least 2");
  std::uint64_t total = 0, term = 1;
  for (std::size_t i = 0; i <= N; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() - term) throw InvalidInput("projective size overflows");
    total += term;
    if (i < N) {
      if (term > std::numeric_limits<std::uint64_t>::max() / q) throw InvalidInput("projective size overflows");
      term *= q;
    }
  }
  return total;
}

PointSet enumerate_projective(std::size_t N, const gf::Field& F, std::uint64_t budget) {
  return variety_points(N, {}, F, budget);
}

PointSet variety_points(std::size_t N, std::span<const poly::HomogPoly> polys, const gf::Field& F,
                        std::uint64_t budget) {
  check_forms(N, polys);
  const auto forms = lift(polys, F);
  const auto hits = scan(N, F, budget, [&](std::span<const gf::Element> pt) { return vanishes(forms, pt); });
  PointSet out;
  out.ambient_dim = N;
  out.field = F;
  const ProjectiveIndexer indexer(N, F.order());
  std::vector<gf::Element> pt;
  for (const auto& chunk : hits)
    for (auto i : chunk) {
      indexer.decode(i, pt);
      out.points.push_back(ProjPoint::canonicalize(pt, F));
    }
  if (!polys.empty()) out.provenance = std::vector<poly::HomogPoly>(polys.begin(), polys.end());
  return out;
}

std::uint64_t variety_count(std::size_t N, std::span<const poly::HomogPoly> polys, const gf::Field& F,
                            std::uint64_t budget) {
  check_forms(N, polys);
  const auto forms = lift(polys, F);
  std::uint64_t count = 0;
  for (const auto& chunk : scan(N, F, budget, [&](std::span<const gf::Element> pt) { return vanishes(forms, pt); }))
    count += chunk.size();
  return count;
}

ProjPoint veronese(const ProjPoint& v, unsigned m, const gf::Field& F) {
  if (m == 0) throw InvalidInput("Veronese degree must be positive");
  return ProjPoint::canonicalize(poly::monomial_values(F, v.coords(), m), F);
}

BigInt point_count_upper(std::uint64_t k, std::uint64_t n, std::uint64_t q) {
  if (q < 2) throw InvalidInput("field order must be at least 2");
  BigInt qq = q;
  return BigInt(k) * ((boost::multiprecision::pow(qq, static_cast<unsigned>(n + 1)) - 1) / (qq - 1));
}

DimensionEstimate dimension_estimate(std::size_t N, std::span<const poly::HomogPoly> polys, unsigned e_max,
                                     std::uint64_t budget) {
  if (e_max < 1 || e_max > gf::Field::kMaxDegree) throw InvalidInput("e_max must be in 1..4");
  if (polys.empty()) {
    DimensionEstimate out;
    out.estimate = static_cast<int>(N);
    return out;  // counts are not needed to know V() = P^N
  }
  const std::uint32_t p = polys.front().field().characteristic();
  for (const auto& f : polys)
    if (!f.field().is_prime_field() || f.field().characteristic() != p)
      throw InvalidInput("dimension_estimate expects forms over one prime field");
  std::uint64_t needed = 0;
  for (unsigned e = 1; e <= e_max; ++e) {
    auto q = checked_pow(p, e);
    if (!q) throw BudgetExceeded("field too large");
    needed += checked_total(N, *q, budget);
    if (needed > budget) throw BudgetExceeded("dimension estimate exceeds the enumeration budget");
  }
  DimensionEstimate out;
  for (unsigned e = 1; e <= e_max; ++e) out.counts.push_back(variety_count(N, polys, gf::Field::extension(p, e), budget));
  const double top = static_cast<double>(out.counts.back());
  if (top > 0) out.estimate = static_cast<int>(std::lround(std::log(top) / (e_max * std::log(double(p)))));
  return out;
}

std::string dump_points(const PointSet& X) {
  std::ostringstream os;
  os << X.ambient_dim << ' ' << X.field.order() << ' ' << X.points.size() << '\n';
  for (const auto& pt : X.points) {
    for (std::size_t i = 0; i < pt.coords().size(); ++i) os << (i ? " " : "") << pt.coords()[i].value;
    os << '\n';
  }
  return os.str();
}

}  // namespace apexforge::geometry
