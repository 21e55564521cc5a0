#include "apexforge/poly.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "apexforge/error.hpp"
#include "apexforge/numeric.hpp"

namespace apexforge::poly {
namespace {

// Number of exponent vectors of k variables with total degree d.
std::uint64_t compositions(std::uint64_t d, std::size_t k) {
  if (k == 0) return d == 0 ? 1 : 0;
  return binomial(d + k - 1, k - 1);
}

// C(a, b) from a table for small arguments; exact wherever the result fits.
std::uint64_t small_binomial(std::uint64_t a, std::uint64_t b) {
  constexpr std::size_t kA = 320, kB = 40;
  static const std::vector<std::uint64_t> table = [] {
    std::vector<std::uint64_t> t(kA * kB, 0);
    for (std::size_t x = 0; x < kA; ++x) {
      t[x * kB] = 1;
      for (std::size_t y = 1; y < kB && y <= x; ++y) {
        const std::uint64_t u = t[(x - 1) * kB + y - 1], v = t[(x - 1) * kB + y];
        t[x * kB + y] = u > ~std::uint64_t{0} - v ? ~std::uint64_t{0} : u + v;  // saturate
      }
    }
    return t;
  }();
  if (a < kA && b < kB) return table[a * kB + b];
  return binomial(a, b);
}

void enumerate(std::size_t n, unsigned rem, std::size_t i, std::vector<std::uint8_t>& cur,
               std::vector<std::uint8_t>& out) {
  if (i + 1 == n) {
    cur[i] = static_cast<std::uint8_t>(rem);
    out.insert(out.end(), cur.begin(), cur.end());
    return;
  }
  for (unsigned v = rem + 1; v-- > 0;) {
    cur[i] = static_cast<std::uint8_t>(v);
    enumerate(n, rem - v, i + 1, cur, out);
  }
}

void check_point(const gf::Field& F, std::span<const gf::Element> point, std::size_t n) {
  if (point.size() != n)
    throw InvalidInput("point has " + std::to_string(point.size()) + " coordinates, expected " + std::to_string(n));
  for (auto c : point) F.check(c);
}

std::size_t basis_size(std::size_t num_vars, unsigned degree) {
  if (num_vars == 0) throw InvalidInput("polynomial ring needs at least one variable");
  return static_cast<std::size_t>(compositions(degree, num_vars));
}

std::size_t product_size(const std::vector<VariableGroup>& groups, std::size_t cap) {
  if (groups.empty()) throw InvalidInput("multihomogeneous form needs at least one group");
  std::size_t total = 1;
  for (const auto& g : groups) {
    const std::size_t b = basis_size(g.num_vars, g.degree);
    if (b != 0 && total > cap / b) throw InvalidInput("product basis exceeds the entry cap");
    total *= b;
  }
  if (total > cap) throw InvalidInput("product basis exceeds the entry cap");
  return total;
}

gf::Field field_from_json(const nlohmann::json& j) {
  const auto p = j.at("p").get<std::uint32_t>();
  const auto e = j.value("e", 1u);
  if (e == 1) return gf::Field::prime(p);
  if (j.contains("modulus")) return gf::Field(p, e, j.at("modulus").get<std::vector<std::uint32_t>>());
  return gf::Field::extension(p, e);
}

void field_to_json(const gf::Field& F, nlohmann::json& j) {
  j["p"] = F.characteristic();
  j["e"] = F.degree();
  if (!F.is_prime_field()) j["modulus"] = F.modulus();
}

std::vector<unsigned> exps_vector(std::span<const std::uint8_t> e) { return {e.begin(), e.end()}; }

}  // namespace

const MonomialBasis& MonomialBasis::get(std::size_t num_vars, unsigned degree) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, unsigned>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{num_vars, degree}];
  if (!slot) slot = std::make_unique<MonomialBasis>(num_vars, degree);
  return *slot;
}

MonomialBasis::MonomialBasis(std::size_t num_vars, unsigned degree)
    : num_vars_(num_vars), degree_(degree), size_(basis_size(num_vars, degree)) {
  if (degree > 255) throw InvalidInput("degree above 255 is not supported");
  exps_.reserve(size_ * num_vars_);
  std::vector<std::uint8_t> cur(num_vars_, 0);
  enumerate(num_vars_, degree_, 0, cur, exps_);
}

std::size_t MonomialBasis::index(std::span<const unsigned> exps) const {
  if (exps.size() != num_vars_) throw InvalidInput("exponent vector has the wrong number of variables");
  unsigned total = 0;
  for (auto e : exps) total += e;
  if (total != degree_) throw InvalidInput("exponent vector has the wrong degree");
  // Vectors preceding exps: at position i, those agreeing before i with a
  // larger exponent at i. Summing compositions over the larger values
  // telescopes to C(rem - e_i - 1 + k, k) with k = n - i - 1.
  std::uint64_t idx = 0;
  unsigned rem = degree_;
  for (std::size_t i = 0; i + 1 < num_vars_; ++i) {
    if (rem > exps[i]) idx += small_binomial(rem - exps[i] - 1 + (num_vars_ - i - 1), num_vars_ - i - 1);
    rem -= exps[i];
  }
  return static_cast<std::size_t>(idx);
}

std::vector<gf::Element> monomial_values(const gf::Field& F, std::span<const gf::Element> point, unsigned degree) {
  const auto& B = MonomialBasis::get(point.size(), degree);
  const std::size_t n = point.size();
  std::vector<gf::Element> powers(n * (degree + 1));
  for (std::size_t i = 0; i < n; ++i) {
    powers[i * (degree + 1)] = F.one();
    for (unsigned k = 1; k <= degree; ++k)
      powers[i * (degree + 1) + k] = F.mul(powers[i * (degree + 1) + k - 1], point[i]);
  }
  std::vector<gf::Element> out(B.size());
  for (std::size_t idx = 0; idx < B.size(); ++idx) {
    auto e = B.exponents(idx);
    gf::Element acc = F.one();
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) acc = F.mul(acc, powers[i * (degree + 1) + e[i]]);
    out[idx] = acc;
  }
  return out;
}

HomogPoly::HomogPoly(const gf::Field& F, std::size_t num_vars, unsigned degree)
    : field_(F), num_vars_(num_vars), degree_(degree), coeffs_(basis_size(num_vars, degree), F.zero()) {}

HomogPoly::HomogPoly(const gf::Field& F, std::size_t num_vars, unsigned degree, std::vector<gf::Element> coeffs)
    : field_(F), num_vars_(num_vars), degree_(degree), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != basis_size(num_vars, degree)) throw InvalidInput("coefficient vector length mismatch");
  for (auto c : coeffs_) F.check(c);
}

HomogPoly HomogPoly::monomial(const gf::Field& F, std::span<const unsigned> exps, gf::Element coeff) {
  unsigned deg = 0;
  for (auto e : exps) deg += e;
  HomogPoly f(F, exps.size(), deg);
  f.set_coeff(f.basis().index(exps), coeff);
  return f;
}

HomogPoly HomogPoly::variable(const gf::Field& F, std::size_t num_vars, std::size_t i) {
  if (i >= num_vars) throw InvalidInput("variable index out of range");
  std::vector<unsigned> e(num_vars, 0);
  e[i] = 1;
  return monomial(F, e);
}

void HomogPoly::set_coeff(std::size_t i, gf::Element c) {
  field_.check(c);
  coeffs_.at(i) = c;
}

bool HomogPoly::is_zero() const {
  for (auto c : coeffs_)
    if (c.value) return false;
  return true;
}

HomogPoly HomogPoly::operator+(const HomogPoly& other) const {
  if (!(other.field_ == field_) || other.num_vars_ != num_vars_ || other.degree_ != degree_)
    throw InvalidInput("adding forms from different spaces");
  HomogPoly out = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = field_.add(coeffs_[i], other.coeffs_[i]);
  return out;
}

HomogPoly HomogPoly::scaled(gf::Element c) const {
  field_.check(c);
  HomogPoly out = *this;
  for (auto& x : out.coeffs_) x = field_.mul(x, c);
  return out;
}

gf::Element evaluate_with(const HomogPoly& f, std::span<const gf::Element> monomials) {
  if (monomials.size() != f.coeffs().size()) throw InvalidInput("monomial vector length mismatch");
  const auto& F = f.field();
  const auto& c = f.coeffs();
  if (F.is_prime_field()) {
    const std::uint64_t p = F.characteristic();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      acc += std::uint64_t{c[i].value} * monomials[i].value;
      if (acc >= (std::uint64_t{1} << 62)) acc %= p;
    }
    return {static_cast<std::uint32_t>(acc % p)};
  }
  gf::Element acc = F.zero();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i].value) acc = F.add(acc, F.mul(c[i], monomials[i]));
  return acc;
}

gf::Element evaluate(const HomogPoly& f, std::span<const gf::Element> point) {
  check_point(f.field(), point, f.num_vars());
  return evaluate_with(f, monomial_values(f.field(), point, f.degree()));
}

HomogPoly multiply(const HomogPoly& a, const HomogPoly& b) {
  if (!(a.field() == b.field()) || a.num_vars() != b.num_vars()) throw InvalidInput("multiplying forms from different rings");
  const auto& F = a.field();
  HomogPoly out(F, a.num_vars(), a.degree() + b.degree());
  const auto& Ba = a.basis();
  const auto& Bb = b.basis();
  const auto& Bo = out.basis();
  std::vector<unsigned> e(a.num_vars());
  std::vector<gf::Element> acc(Bo.size(), F.zero());
  for (std::size_t i = 0; i < Ba.size(); ++i) {
    if (!a.coeff(i).value) continue;
    auto ea = Ba.exponents(i);
    for (std::size_t j = 0; j < Bb.size(); ++j) {
      if (!b.coeff(j).value) continue;
      auto eb = Bb.exponents(j);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = unsigned{ea[k]} + eb[k];
      const std::size_t idx = Bo.index(e);
      acc[idx] = F.add(acc[idx], F.mul(a.coeff(i), b.coeff(j)));
    }
  }
  return HomogPoly(F, a.num_vars(), out.degree(), std::move(acc));
}

linalg::Matrix multiply_map_matrix(const HomogPoly& f, unsigned target_degree) {
  if (!f.field().is_prime_field()) throw InvalidInput("multiply_map_matrix needs a prime field");
  if (target_degree < f.degree()) throw InvalidInput("target degree is below the degree of the form");
  const auto& Bl = MonomialBasis::get(f.num_vars(), target_degree);
  const auto& Bs = MonomialBasis::get(f.num_vars(), target_degree - f.degree());
  const auto& Bf = f.basis();
  linalg::Matrix M(Bl.size(), Bs.size());
  std::vector<unsigned> e(f.num_vars());
  for (std::size_t i = 0; i < Bf.size(); ++i) {
    const auto c = f.coeff(i).value;
    if (!c) continue;
    auto ef = Bf.exponents(i);
    for (std::size_t col = 0; col < Bs.size(); ++col) {
      auto es = Bs.exponents(col);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = unsigned{ef[k]} + es[k];
      M.at(Bl.index(e), col) = c;  // distinct terms land on distinct rows
    }
  }
  return M;
}

HomogPoly sample_uniform(const gf::Field& F, std::size_t num_vars, unsigned degree, Rng& rng) {
  HomogPoly f(F, num_vars, degree);
  std::vector<gf::Element> c(f.coeffs().size());
  for (auto& x : c) x = {static_cast<std::uint32_t>(rng.uniform_below(F.order()))};
  return HomogPoly(F, num_vars, degree, std::move(c));
}

MultiHomogPoly::MultiHomogPoly(const gf::Field& F, std::vector<VariableGroup> groups, std::size_t entry_cap)
    : field_(F), groups_(std::move(groups)) {
  coeffs_.assign(product_size(groups_, entry_cap), F.zero());
}

MultiHomogPoly::MultiHomogPoly(const gf::Field& F, std::vector<VariableGroup> groups, std::vector<gf::Element> coeffs,
                               std::size_t entry_cap)
    : field_(F), groups_(std::move(groups)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != product_size(groups_, entry_cap)) throw InvalidInput("coefficient tensor size mismatch");
  for (auto c : coeffs_) F.check(c);
}

bool MultiHomogPoly::is_zero() const {
  for (auto c : coeffs_)
    if (c.value) return false;
  return true;
}

std::size_t MultiHomogPoly::flat_index(std::span<const std::size_t> per_group) const {
  if (per_group.size() != groups_.size()) throw InvalidInput("multi-index has the wrong number of groups");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < groups_.size(); ++k) {
    const std::size_t b = MonomialBasis::get(groups_[k].num_vars, groups_[k].degree).size();
    if (per_group[k] >= b) throw InvalidInput("multi-index out of range");
    idx = idx * b + per_group[k];
  }
  return idx;
}

MultiHomogPoly contract_leading(const MultiHomogPoly& g, std::span<const gf::Element> monomials) {
  const auto& groups = g.groups();
  if (groups.size() < 2) throw InvalidInput("contraction needs at least two groups");
  const auto& F = g.field();
  const std::size_t lead = monomials.size();
  if (lead != MonomialBasis::get(groups[0].num_vars, groups[0].degree).size())
    throw InvalidInput("monomial vector length mismatch");
  std::vector<VariableGroup> rest(groups.begin() + 1, groups.end());
  const std::size_t inner = g.size() / lead;
  std::vector<gf::Element> out(inner, F.zero());
  const auto& c = g.coeffs();
  if (F.is_prime_field()) {
    const std::uint64_t p = F.characteristic();
    std::vector<std::uint64_t> acc(inner, 0);
    for (std::size_t i = 0; i < lead; ++i) {
      const std::uint64_t w = monomials[i].value;
      if (!w) continue;
      const gf::Element* row = c.data() + i * inner;
      for (std::size_t j = 0; j < inner; ++j) acc[j] = (acc[j] + w * row[j].value) % p;
    }
    for (std::size_t j = 0; j < inner; ++j) out[j] = {static_cast<std::uint32_t>(acc[j])};
  } else {
    for (std::size_t i = 0; i < lead; ++i)
      for (std::size_t j = 0; j < inner; ++j)
        out[j] = F.add(out[j], F.mul(monomials[i], c[i * inner + j]));
  }
  return MultiHomogPoly(F, std::move(rest), std::move(out), g.size());
}

MultiHomogPoly partial_evaluate(const MultiHomogPoly& g, std::span<const std::vector<gf::Element>> points) {
  if (points.size() >= g.groups().size()) throw InvalidInput("partial evaluation must leave at least one group");
  MultiHomogPoly cur = g;
  for (const auto& pt : points) {
    const auto& grp = cur.groups().front();
    check_point(g.field(), pt, grp.num_vars);
    cur = contract_leading(cur, monomial_values(g.field(), pt, grp.degree));
  }
  return cur;
}

HomogPoly last_group_form(const MultiHomogPoly& g) {
  if (g.groups().size() != 1) throw InvalidInput("expected a single variable group");
  return HomogPoly(g.field(), g.groups()[0].num_vars, g.groups()[0].degree, g.coeffs());
}

gf::Element evaluate_multi(const MultiHomogPoly& g, std::span<const std::vector<gf::Element>> points) {
  const auto& groups = g.groups();
  if (points.size() != groups.size())
    throw InvalidInput("expected " + std::to_string(groups.size()) + " points, got " + std::to_string(points.size()));
  if (groups.size() == 1) return evaluate(last_group_form(g), points[0]);
  const auto last = points.size() - 1;
  const MultiHomogPoly rest = partial_evaluate(g, points.subspan(0, last));
  return evaluate(last_group_form(rest), points[last]);
}

MultiHomogPoly sample_uniform_multi(const gf::Field& F, std::vector<VariableGroup> groups, Rng& rng,
                                    std::size_t entry_cap) {
  MultiHomogPoly g(F, std::move(groups), entry_cap);
  for (auto& x : g.coeffs()) x = {static_cast<std::uint32_t>(rng.uniform_below(F.order()))};
  return g;
}

nlohmann::json to_json(const HomogPoly& f) {
  nlohmann::json j;
  field_to_json(f.field(), j);
  j["num_vars"] = f.num_vars();
  j["degree"] = f.degree();
  auto terms = nlohmann::json::array();
  const auto& B = f.basis();
  for (std::size_t i = 0; i < B.size(); ++i)
    if (f.coeff(i).value) terms.push_back({{"exps", exps_vector(B.exponents(i))}, {"coeff", f.coeff(i).value}});
  j["terms"] = std::move(terms);
  return j;
}

nlohmann::json to_json(const MultiHomogPoly& g) {
  nlohmann::json j;
  field_to_json(g.field(), j);
  auto groups = nlohmann::json::array();
  std::vector<const MonomialBasis*> bases;
  for (const auto& grp : g.groups()) {
    groups.push_back({{"num_vars", grp.num_vars}, {"degree", grp.degree}});
    bases.push_back(&MonomialBasis::get(grp.num_vars, grp.degree));
  }
  j["groups"] = std::move(groups);
  auto terms = nlohmann::json::array();
  const std::size_t d = bases.size();
  std::vector<std::size_t> idx(d);
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    if (!g.coeffs()[flat].value) continue;
    std::size_t rem = flat;
    for (std::size_t k = d; k-- > 0;) {
      idx[k] = rem % bases[k]->size();
      rem /= bases[k]->size();
    }
    auto exps = nlohmann::json::array();
    for (std::size_t k = 0; k < d; ++k) exps.push_back(exps_vector(bases[k]->exponents(idx[k])));
    terms.push_back({{"exps", std::move(exps)}, {"coeff", g.coeffs()[flat].value}});
  }
  j["terms"] = std::move(terms);
  return j;
}

HomogPoly homog_from_json(const nlohmann::json& j) {
  try {
    const gf::Field F = field_from_json(j);
    HomogPoly f(F, j.at("num_vars").get<std::size_t>(), j.at("degree").get<unsigned>());
    std::vector<char> seen(f.coeffs().size(), 0);
    for (const auto& t : j.at("terms")) {
      const auto e = t.at("exps").get<std::vector<unsigned>>();
      const std::size_t idx = f.basis().index(e);
      if (seen[idx]) throw InvalidInput("duplicate term in polynomial");
      seen[idx] = 1;
      f.set_coeff(idx, {t.at("coeff").get<std::uint32_t>()});
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed polynomial: ") + e.what());
  }
}

MultiHomogPoly multi_from_json(const nlohmann::json& j) {
  try {
    const gf::Field F = field_from_json(j);
    std::vector<VariableGroup> groups;
    for (const auto& g : j.at("groups"))
      groups.push_back({g.at("num_vars").get<std::size_t>(), g.at("degree").get<unsigned>()});
    MultiHomogPoly g(F, groups);
    std::vector<char> seen(g.size(), 0);
    std::vector<std::size_t> idx(groups.size());
    for (const auto& t : j.at("terms")) {
      const auto& exps = t.at("exps");
      if (!exps.is_array() || exps.size() != groups.size()) throw InvalidInput("term has the wrong number of groups");
      for (std::size_t k = 0; k < groups.size(); ++k)
        idx[k] = MonomialBasis::get(groups[k].num_vars, groups[k].degree).index(exps[k].get<std::vector<unsigned>>());
      const std::size_t flat = g.flat_index(idx);
      if (seen[flat]) throw InvalidInput("duplicate term in polynomial");
      seen[flat] = 1;
      const gf::Element c{t.at("coeff").get<std::uint32_t>()};
      F.check(c);
      g.coeffs()[flat] = c;
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed polynomial: ") + e.what());
  }
}

}  // namespace apexforge::poly
