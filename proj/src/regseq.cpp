#include "apexforge/regseq.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "apexforge/error.hpp"
#include "apexforge/linalg.hpp"

namespace apexforge::regseq {
namespace {

using poly::HomogPoly;
using poly::MonomialBasis;

std::uint32_t prime_of(const geometry::PointSet& X) {
  if (!X.field.is_prime_field()) throw InvalidInput("Hilbert functions of point sets need a prime field");
  return X.field.characteristic();
}

std::vector<std::uint32_t> veronese_row(const geometry::PointSet& X, std::size_t i, unsigned m) {
  const auto mv = poly::monomial_values(X.field, X.points[i].coords(), m);
  std::vector<std::uint32_t> row(mv.size());
  for (std::size_t k = 0; k < mv.size(); ++k) row[k] = mv[k].value;
  return row;
}

// Validates a sequence of forms and returns (p, degrees).
std::pair<std::uint32_t, std::vector<unsigned>> inspect(std::size_t num_vars, std::span<const HomogPoly> f) {
  if (num_vars == 0) throw InvalidInput("ring needs at least one variable");
  std::uint32_t p = 0;
  std::vector<unsigned> degrees;
  for (const auto& g : f) {
    if (g.num_vars() != num_vars) throw InvalidInput("forms live in different rings");
    if (!g.field().is_prime_field()) throw InvalidInput("regularity tests need a prime field");
    if (p == 0) p = g.field().characteristic();
    if (g.field().characteristic() != p) throw InvalidInput("forms over different fields");
    degrees.push_back(g.degree());
  }
  return {p, degrees};
}

struct Term {
  std::vector<unsigned> exps;
  std::uint32_t coeff;
};

std::vector<Term> terms_of(const HomogPoly& f) {
  std::vector<Term> out;
  const auto& B = f.basis();
  for (std::size_t i = 0; i < B.size(); ++i)
    if (f.coeff(i).value) {
      auto e = B.exponents(i);
      out.push_back({{e.begin(), e.end()}, f.coeff(i).value});
    }
  return out;
}

// Writes x^beta * f (scaled by `sign`) into `row` over the basis of R_l.
void write_multiple(const std::vector<Term>& terms, std::span<const std::uint8_t> beta, const MonomialBasis& Bl,
                    std::uint32_t p, bool negate, std::span<std::uint32_t> row, std::vector<unsigned>& scratch) {
  for (const auto& t : terms) {
    for (std::size_t k = 0; k < scratch.size(); ++k) scratch[k] = t.exps[k] + beta[k];
    row[Bl.index(scratch)] = negate ? p - t.coeff : t.coeff;
  }
}

// Rows x^beta f_i for all i with m_i <= l and all beta of degree l - m_i,
// columns indexed by R_l. The transpose of the first Koszul differential.
linalg::Matrix macaulay_rows(std::size_t n, std::span<const HomogPoly> f, unsigned l, std::uint32_t p) {
  const auto& Bl = MonomialBasis::get(n, l);
  std::size_t rows = 0;
  for (const auto& g : f)
    if (g.degree() <= l) rows += MonomialBasis::get(n, l - g.degree()).size();
  linalg::Matrix M(rows, Bl.size());
  std::vector<unsigned> scratch(n);
  std::size_t r = 0;
  for (const auto& g : f) {
    if (g.degree() > l) continue;
    const auto terms = terms_of(g);
    const auto& Bs = MonomialBasis::get(n, l - g.degree());
    for (std::size_t b = 0; b < Bs.size(); ++b, ++r) write_multiple(terms, Bs.exponents(b), Bl, p, false, M.row(r), scratch);
  }
  return M;
}

// Ranks of the degree-l Macaulay matrices for l = 0, 1, 2, ... in turn.
// A row x^a f_i is skipped when x^a is a leading monomial of the degree
// l - m_i part of <f_1..f_{i-1}>: if h = x^a + (smaller terms) lies in that
// ideal, h f_i is a combination of earlier blocks, so x^a f_i is a
// combination of earlier blocks and smaller multiples of f_i. Skipping
// such rows never changes the rank; for regular sequences it removes every
// row that would otherwise reduce to zero.
class MacaulaySweep {
 public:
  MacaulaySweep(std::size_t n, std::span<const HomogPoly> f, std::uint32_t p)
      : n_(n), f_(f), p_(p), leading_(f.size()) {
    for (const auto& g : f) terms_.push_back(terms_of(g));
  }

  unsigned next_degree() const { return next_; }

  std::size_t next_rank() {
    const unsigned l = next_++;
    const auto& Bl = MonomialBasis::get(n_, l);
    linalg::RowEchelon E(Bl.size(), p_);
    std::vector<std::uint32_t> row(Bl.size());
    std::vector<unsigned> scratch(n_);
    for (std::size_t i = 0; i < f_.size(); ++i) {
      const unsigned m = f_[i].degree();
      if (m <= l) {
        const auto& Bs = MonomialBasis::get(n_, l - m);
        const std::vector<char>* skip = i > 0 ? &leading_[i - 1][l - m] : nullptr;
        for (std::size_t b = 0; b < Bs.size(); ++b) {
          if (skip && (*skip)[b]) continue;
          std::fill(row.begin(), row.end(), 0);
          write_multiple(terms_[i], Bs.exponents(b), Bl, p_, false, row, scratch);
          E.insert(row);
        }
      }
      leading_[i].push_back(E.pivot_mask());
    }
    return E.rank();
  }

 private:
  std::size_t n_;
  std::span<const HomogPoly> f_;
  std::uint32_t p_;
  std::vector<std::vector<Term>> terms_;
  // leading_[i][l]: leading monomials of <f_1..f_{i+1}> in degree l.
  std::vector<std::vector<std::vector<char>>> leading_;
  unsigned next_ = 0;
};

// Offsets of the blocks R_{l - m_i} of the middle Koszul term.
struct MiddleLayout {
  std::vector<std::size_t> offset;  // per i; meaningful when present[i]
  std::vector<char> present;
  std::size_t dim = 0;
};

MiddleLayout middle_layout(std::size_t n, std::span<const unsigned> degrees, unsigned l) {
  MiddleLayout L;
  for (auto m : degrees) {
    L.offset.push_back(L.dim);
    L.present.push_back(m <= l);
    if (m <= l) L.dim += MonomialBasis::get(n, l - m).size();
  }
  return L;
}

// Rows are d2(x^gamma e_i ^ e_j) = x^gamma (f_i e_j - f_j e_i) in the middle
// coordinates: the transpose of the second Koszul differential.
linalg::Matrix koszul_d2_rows(std::size_t n, std::span<const HomogPoly> f, unsigned l, std::uint32_t p,
                              const MiddleLayout& L) {
  const std::size_t r = f.size();
  std::size_t rows = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (f[i].degree() + f[j].degree() <= l) rows += MonomialBasis::get(n, l - f[i].degree() - f[j].degree()).size();
  linalg::Matrix M(rows, L.dim);
  std::vector<std::vector<Term>> terms;
  for (const auto& g : f) terms.push_back(terms_of(g));
  std::vector<unsigned> scratch(n);
  std::size_t row = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      const unsigned mi = f[i].degree(), mj = f[j].degree();
      if (mi + mj > l) continue;
      const auto& Bg = MonomialBasis::get(n, l - mi - mj);
      const auto& Bi = MonomialBasis::get(n, l - mi);
      const auto& Bj = MonomialBasis::get(n, l - mj);
      for (std::size_t g = 0; g < Bg.size(); ++g, ++row) {
        auto out = M.row(row);
        write_multiple(terms[i], Bg.exponents(g), Bj, p, false, out.subspan(L.offset[j], Bj.size()), scratch);
        write_multiple(terms[j], Bg.exponents(g), Bi, p, true, out.subspan(L.offset[i], Bi.size()), scratch);
      }
    }
  return M;
}

// Splits a middle-term vector into its components f-shaped by degree.
std::vector<HomogPoly> split_middle(std::size_t n, std::span<const HomogPoly> f, unsigned l, const MiddleLayout& L,
                                    std::span<const std::uint32_t> v) {
  std::vector<HomogPoly> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const gf::Field& F = f[i].field();
    if (!L.present[i]) {
      out.emplace_back(F, n, 0);  // placeholder: no component in this degree
      continue;
    }
    const std::size_t size = MonomialBasis::get(n, l - f[i].degree()).size();
    std::vector<gf::Element> c(size);
    for (std::size_t k = 0; k < size; ++k) c[k] = {v[L.offset[i] + k]};
    out.emplace_back(F, n, l - f[i].degree(), std::move(c));
  }
  return out;
}

std::vector<std::uint32_t> join_middle(std::span<const HomogPoly> syz, const MiddleLayout& L) {
  std::vector<std::uint32_t> v(L.dim, 0);
  for (std::size_t i = 0; i < syz.size(); ++i) {
    if (!L.present[i]) continue;
    for (std::size_t k = 0; k < syz[i].coeffs().size(); ++k) v[L.offset[i] + k] = syz[i].coeff(k).value;
  }
  return v;
}

void check_cutoff(std::span<const unsigned> degrees, unsigned cutoff) {
  for (auto m : degrees)
    if (cutoff < m) throw InvalidInput("cutoff is below the largest degree in the sequence");
}

std::optional<std::size_t> first_zero(std::span<const HomogPoly> f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i].is_zero()) return i;
  return std::nullopt;
}

// Syzygy e_i for a zero entry f_i (constant 1 in component i).
std::vector<HomogPoly> unit_syzygy(std::size_t n, std::span<const HomogPoly> f, std::size_t i) {
  std::vector<HomogPoly> out;
  const unsigned l = f[i].degree();
  for (std::size_t k = 0; k < f.size(); ++k) {
    const unsigned deg = f[k].degree() <= l ? l - f[k].degree() : 0;
    HomogPoly c(f[k].field(), n, deg);
    if (k == i) c.set_coeff(0, f[k].field().one());
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::size_t hilbert_function_points(const geometry::PointSet& X, unsigned m) {
  std::vector<std::size_t> all(X.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return hilbert_function_subset(X, all, m);
}

std::size_t hilbert_function_subset(const geometry::PointSet& X, std::span<const std::size_t> subset, unsigned m) {
  const std::uint32_t p = prime_of(X);
  const std::size_t width = MonomialBasis::get(X.ambient_dim + 1, m).size();
  linalg::Matrix M(subset.size(), width);
  for (std::size_t r = 0; r < subset.size(); ++r) {
    if (subset[r] >= X.size()) throw InvalidInput("subset index out of range");
    auto row = veronese_row(X, subset[r], m);
    std::copy(row.begin(), row.end(), M.row(r).begin());
  }
  return linalg::rank(std::move(M), p);
}

IndependenceReport is_swise_independent(const geometry::PointSet& X, std::size_t s, unsigned m) {
  const std::uint32_t p = prime_of(X);
  if (s > X.size()) throw InvalidInput("s exceeds the number of points");
  IndependenceReport rep{s, m, true, {}};
  if (s == 0) return rep;
  const std::size_t width = MonomialBasis::get(X.ambient_dim + 1, m).size();
  if (s > width) {
    rep.verdict = false;
    for (std::size_t i = 0; i < s; ++i) rep.witness.push_back(i);
    return rep;
  }
  if (s == 1) return rep;  // every Veronese vector is nonzero
  if (s == 2) {
    // Two points are dependent iff their canonical Veronese images coincide.
    std::map<geometry::ProjPoint, std::size_t> first;
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = 0; i < X.size(); ++i) {
      auto [it, fresh] = first.emplace(geometry::veronese(X.points[i], m, X.field), i);
      if (!fresh) {
        std::pair<std::size_t, std::size_t> cand{it->second, i};
        if (!best || cand < *best) best = cand;
      }
    }
    if (best) {
      rep.verdict = false;
      rep.witness = {best->first, best->second};
    }
    return rep;
  }

  std::vector<std::vector<std::uint32_t>> rows(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) rows[i] = veronese_row(X, i, m);
  linalg::IncrementalBasis basis(width, p);
  std::vector<std::size_t> prefix;
  // Depth-first over index sequences in lexicographic order, descending only
  // into independent prefixes that can still reach size s.
  auto dfs = [&](auto&& self, std::size_t start) -> bool {
    if (prefix.size() == s) return false;
    for (std::size_t i = start; i + (s - prefix.size()) <= X.size(); ++i) {
      prefix.push_back(i);
      if (!basis.push(rows[i])) {
        for (std::size_t k = i + 1; prefix.size() < s; ++k) prefix.push_back(k);
        return true;
      }
      if (self(self, i + 1)) return true;
      basis.pop();
      prefix.pop_back();
    }
    return false;
  };
  if (dfs(dfs, 0)) {
    rep.verdict = false;
    rep.witness = prefix;
  }
  return rep;
}

bool minimally_dependent(const geometry::PointSet& X, unsigned m) {
  const std::size_t n = X.size();
  if (n == 0 || hilbert_function_points(X, m) == n) return false;
  // Subsets of independent sets are independent, so it suffices to drop
  // one point at a time.
  std::vector<std::size_t> sub;
  for (std::size_t drop = 0; drop < n; ++drop) {
    sub.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (i != drop) sub.push_back(i);
    if (hilbert_function_subset(X, sub, m) != n - 1) return false;
  }
  return true;
}

std::int64_t ci_hilbert_coeff(std::size_t N, std::span<const unsigned> degrees, unsigned l) {
  std::vector<std::int64_t> num(l + 1, 0);
  num[0] = 1;
  for (auto m : degrees) {
    if (m == 0) return 0;  // factor 1 - t^0 vanishes
    for (std::size_t k = l + 1; k-- > m;) num[k] -= num[k - m];
  }
  std::int64_t acc = 0;
  for (unsigned k = 0; k <= l; ++k)
    if (num[k]) acc += num[k] * static_cast<std::int64_t>(binomial(N + l - k, N));
  return acc;
}

std::int64_t hilbert_function_quotient(std::size_t num_vars, std::span<const HomogPoly> f, unsigned l) {
  const auto [p, degrees] = inspect(num_vars, f);
  const auto total = static_cast<std::int64_t>(MonomialBasis::get(num_vars, l).size());
  if (f.empty()) return total;
  MacaulaySweep sweep(num_vars, f, p);
  std::size_t rk = 0;
  while (sweep.next_degree() <= l) rk = sweep.next_rank();
  return total - static_cast<std::int64_t>(rk);
}

std::string to_string(Method m) { return m == Method::hilbert ? "hilbert" : "koszul"; }

unsigned default_cutoff(std::size_t N, std::span<const unsigned> degrees) {
  unsigned s = 0;
  for (auto m : degrees) s += m;
  return s + static_cast<unsigned>(N) + 1;
}

RegularityCertificate is_regular_hilbert(std::size_t num_vars, std::span<const HomogPoly> f,
                                         std::optional<unsigned> cutoff) {
  const auto [p, degrees] = inspect(num_vars, f);
  RegularityCertificate cert;
  cert.degrees = degrees;
  cert.method = Method::hilbert;
  cert.cutoff = cutoff.value_or(default_cutoff(num_vars - 1, degrees));
  check_cutoff(degrees, cert.cutoff);
  if (f.empty()) {
    cert.verdict = true;
    return cert;
  }
  if (auto z = first_zero(f)) {
    cert.witness_degree = degrees[*z];
    return cert;
  }
  MacaulaySweep sweep(num_vars, f, p);
  for (unsigned l = 0; l <= cert.cutoff; ++l) {
    const auto quotient = static_cast<std::int64_t>(MonomialBasis::get(num_vars, l).size() - sweep.next_rank());
    if (quotient != ci_hilbert_coeff(num_vars - 1, degrees, l)) {
      cert.witness_degree = l;
      return cert;
    }
  }
  cert.verdict = true;
  return cert;
}

namespace {

KoszulDegreeCheck koszul_strand(std::size_t num_vars, std::span<const HomogPoly> f, unsigned l, std::uint32_t p,
                                std::span<const unsigned> degrees, std::size_t rank_d1) {
  KoszulDegreeCheck out;
  const MiddleLayout L = middle_layout(num_vars, degrees, l);
  out.middle_dim = L.dim;
  out.rank_d1 = rank_d1;
  if (L.dim == 0) return out;
  linalg::Matrix d2 = koszul_d2_rows(num_vars, f, l, p, L);
  out.rank_d2 = linalg::rank(d2, p);
  out.exact = out.rank_d1 + out.rank_d2 == out.middle_dim;
  if (out.exact) return out;

  // A kernel vector of d1 outside the span of the d2 rows, scaled so its
  // first nonzero entry is 1.
  const linalg::Matrix d1 = macaulay_rows(num_vars, f, l, p).transposed();
  linalg::IncrementalBasis image(L.dim, p);
  for (std::size_t r = 0; r < d2.rows(); ++r) image.push(d2.row(r));
  for (auto& v : linalg::nullspace(d1, p)) {
    if (!image.push(v)) continue;
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    const std::uint64_t s = gf::inv_mod(v[lead], p);
    for (auto& x : v) x = static_cast<std::uint32_t>(x * s % p);
    out.witness = split_middle(num_vars, f, l, L, v);
    break;
  }
  return out;
}

}  // namespace

KoszulDegreeCheck koszul_graded_check(std::size_t num_vars, std::span<const HomogPoly> f, unsigned l) {
  const auto [p, degrees] = inspect(num_vars, f);
  std::size_t rank_d1 = 0;
  if (!f.empty()) {
    MacaulaySweep sweep(num_vars, f, p);
    while (sweep.next_degree() <= l) rank_d1 = sweep.next_rank();
  }
  return koszul_strand(num_vars, f, l, p, degrees, rank_d1);
}

RegularityCertificate is_regular_koszul(std::size_t num_vars, std::span<const HomogPoly> f,
                                        std::optional<unsigned> cutoff) {
  const auto [p, degrees] = inspect(num_vars, f);
  RegularityCertificate cert;
  cert.degrees = degrees;
  cert.method = Method::koszul;
  cert.cutoff = cutoff.value_or(default_cutoff(num_vars - 1, degrees));
  check_cutoff(degrees, cert.cutoff);
  if (f.empty()) {
    cert.verdict = true;
    return cert;
  }
  if (auto z = first_zero(f)) {
    cert.witness_degree = degrees[*z];
    cert.syzygy = unit_syzygy(num_vars, f, *z);
    return cert;
  }
  MacaulaySweep sweep(num_vars, f, p);
  for (unsigned l = 0; l <= cert.cutoff; ++l) {
    auto check = koszul_strand(num_vars, f, l, p, degrees, f.empty() ? 0 : sweep.next_rank());
    if (!check.exact) {
      cert.witness_degree = l;
      cert.syzygy = std::move(check.witness);
      return cert;
    }
  }
  cert.verdict = true;
  return cert;
}

bool revalidate_witness(std::size_t num_vars, std::span<const HomogPoly> f, const RegularityCertificate& cert) {
  if (cert.verdict || !cert.witness_degree || !cert.syzygy) return false;
  const auto [p, degrees] = inspect(num_vars, f);
  const unsigned l = *cert.witness_degree;
  const auto& syz = *cert.syzygy;
  if (syz.size() != f.size()) return false;
  const MiddleLayout L = middle_layout(num_vars, degrees, l);
  // sum_i syz_i f_i = 0, computed by polynomial multiplication.
  HomogPoly total(f[0].field(), num_vars, l);
  bool nonzero = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!L.present[i]) continue;
    if (syz[i].degree() + f[i].degree() != l || syz[i].num_vars() != num_vars) return false;
    if (!syz[i].is_zero()) nonzero = true;
    total = total + poly::multiply(syz[i], f[i]);
  }
  if (!nonzero || !total.is_zero()) return false;
  // Outside the image of d2: appending the syzygy raises the rank.
  linalg::Matrix d2 = koszul_d2_rows(num_vars, f, l, p, L);
  const std::size_t before = linalg::rank(d2, p);
  linalg::Matrix ext(d2.rows() + 1, L.dim);
  std::copy(d2.data().begin(), d2.data().end(), ext.data().begin());
  const auto v = join_middle(syz, L);
  std::copy(v.begin(), v.end(), ext.row(d2.rows()).begin());
  return linalg::rank(std::move(ext), p) == before + 1;
}

BigInt nonregular_dim_bound(std::uint64_t N, std::uint64_t n, std::span<const unsigned> degrees) {
  const std::size_t s = degrees.size();
  if (s == 0 || s > n || n > N) throw InvalidInput("nonregular_dim_bound requires 1 <= s <= n <= N");
  BigInt sum = 0;
  std::optional<BigInt> least;
  for (std::size_t i = 1; i <= s; ++i) {
    const unsigned m = degrees[i - 1];
    sum += big_binomial(N + m, N);
    BigInt c = big_binomial(n - i + 1 + m, m);
    if (!least || c < *least) least = c;
  }
  return sum - *least;
}

PsiBound psi_upper(std::uint64_t N, std::uint64_t t, std::uint64_t m) {
  PsiBound out;
  if (t <= m + 1) {
    out.kind = PsiBound::Kind::empty;
    return out;
  }
  if (N < 3 || t < 3 || m < 3 || t < m || t > N) return out;
  out.kind = PsiBound::Kind::bound;
  const BigRational tail = BigRational(N + 1) + BigRational((m - 2) * t, m + 4);
  out.value = BigRational((3 * t) / (m + 4)) * tail;
  return out;
}

nlohmann::json to_json(const RegularityCertificate& c) {
  nlohmann::json j;
  j["degrees"] = c.degrees;
  j["verdict"] = c.verdict;
  j["method"] = to_string(c.method);
  j["cutoff"] = c.cutoff;
  j["witness_degree"] = c.witness_degree ? nlohmann::json(*c.witness_degree) : nlohmann::json(nullptr);
  if (c.syzygy) {
    auto arr = nlohmann::json::array();
    for (const auto& g : *c.syzygy) arr.push_back(poly::to_json(g));
    j["syzygy"] = std::move(arr);
  } else {
    j["syzygy"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const IndependenceReport& r) {
  return {{"s", r.s}, {"m", r.m}, {"verdict", r.verdict}, {"witness", r.witness}};
}

}  // namespace apexforge::regseq
