#include "apexforge/hypergraph.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <iterator>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "apexforge/error.hpp"
#include "apexforge/parallel.hpp"

namespace apexforge::hypergraph {

namespace {

std::vector<std::uint64_t> parse_numbers(const std::string& line, char sep) {
  std::vector<std::uint64_t> out;
  std::string tok;
  std::istringstream in(line);
  while (std::getline(in, tok, sep)) {
    const auto b = tok.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = tok.find_last_not_of(" \t");
    tok = tok.substr(b, e - b + 1);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &used);
    } catch (const std::exception&) {
      throw InvalidInput("not a number: '" + tok + "'");
    }
    if (used != tok.size() || tok[0] == '-') throw InvalidInput("not a number: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::uint64_t> split_ws(const std::string& line) {
  std::vector<std::uint64_t> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    auto v = parse_numbers(tok, ' ');
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

bool blank(const std::string& line) {
  const auto b = line.find_first_not_of(" \t\r");
  return b == std::string::npos || line[b] == '#';
}

std::vector<Vertex> to_zero_based(const std::vector<std::uint64_t>& one_based) {
  std::vector<Vertex> e;
  e.reserve(one_based.size());
  for (auto v : one_based) {
    if (v == 0 || v > std::numeric_limits<Vertex>::max()) throw InvalidInput("pattern indices are 1-based");
    e.push_back(static_cast<Vertex>(v - 1));
  }
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// Pattern

Pattern::Pattern(std::vector<std::size_t> part_sizes, std::vector<std::vector<Vertex>> edges)
    : part_sizes_(std::move(part_sizes)), edges_(std::move(edges)) {
  if (part_sizes_.empty()) throw InvalidInput("pattern needs at least one part");
  for (auto s : part_sizes_)
    if (s == 0) throw InvalidInput("pattern part sizes must be positive");
  if (edges_.empty()) throw InvalidInput("pattern has no edges");
  std::set<std::vector<Vertex>> seen;
  for (const auto& e : edges_) {
    if (e.size() != part_sizes_.size()) throw InvalidInput("pattern edge has the wrong arity");
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] >= part_sizes_[i]) throw InvalidInput("pattern edge index out of range");
    if (!seen.insert(e).second) throw InvalidInput("duplicate pattern edge");
  }
}

Pattern Pattern::parse(std::istream& in) {
  std::string line;
  std::vector<std::uint64_t> header;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    header = split_ws(line);
    break;
  }
  if (header.empty()) throw InvalidInput("pattern file is empty");
  const auto d = header[0];
  if (d < 2) throw InvalidInput("pattern uniformity d must be >= 2");
  if (header.size() != d) throw InvalidInput("pattern header must list d - 1 part sizes");
  std::vector<std::size_t> sizes(header.begin() + 1, header.end());
  std::vector<std::vector<Vertex>> edges;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    edges.push_back(to_zero_based(split_ws(line)));
  }
  return Pattern(std::move(sizes), std::move(edges));
}

Pattern Pattern::parse(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

Pattern Pattern::from_spec(const std::string& parts, const std::string& edges) {
  const auto sizes_raw = parse_numbers(parts, ',');
  std::vector<std::size_t> sizes(sizes_raw.begin(), sizes_raw.end());
  std::vector<std::vector<Vertex>> es;
  std::istringstream in(edges);
  std::string tok;
  while (std::getline(in, tok, ';')) {
    if (blank(tok)) continue;
    es.push_back(to_zero_based(parse_numbers(tok, ',')));
  }
  return Pattern(std::move(sizes), std::move(es));
}

std::size_t Pattern::max_part_size() const {
  return *std::max_element(part_sizes_.begin(), part_sizes_.end());
}

std::string Pattern::to_text() const {
  std::ostringstream os;
  os << uniformity();
  for (auto s : part_sizes_) os << ' ' << s;
  os << '\n';
  for (const auto& e : edges_) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i] + 1;
    os << '\n';
  }
  return os.str();
}

Pattern complete_pattern(std::vector<std::size_t> part_sizes) {
  if (part_sizes.empty()) throw InvalidInput("pattern needs at least one part");
  for (auto s : part_sizes)
    if (s == 0) throw InvalidInput("pattern part sizes must be positive");
  std::vector<std::vector<Vertex>> edges;
  std::vector<Vertex> cur(part_sizes.size(), 0);
  while (true) {
    edges.push_back(cur);
    std::size_t i = cur.size();
    while (i > 0) {
      --i;
      if (++cur[i] < part_sizes[i]) break;
      cur[i] = 0;
      if (i == 0) return Pattern(std::move(part_sizes), std::move(edges));
    }
  }
}

// ---------------------------------------------------------------------------
// ApexIndex

ApexIndex::ApexIndex(std::size_t apex_side, std::span<const std::size_t> part_sizes,
                     std::span<const Vertex> flat_edges)
    : apex_side_(apex_side) {
  const std::size_t d = part_sizes.size();
  std::uint64_t stride = 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (j == apex_side) continue;
    radix_.push_back(stride);
    const auto n = std::max<std::size_t>(part_sizes[j], 1);
    if (stride > std::numeric_limits<std::uint64_t>::max() / n)
      throw InvalidInput("host too large for the apex index");
    stride *= n;
  }
  std::vector<Vertex> others(d - 1);
  for (std::size_t i = 0; i + d <= flat_edges.size(); i += d) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < d; ++j)
      if (j != apex_side) others[k++] = flat_edges[i + j];
    lists_[key(others)].push_back(flat_edges[i + apex_side]);
  }
  for (auto& [k, v] : lists_) std::sort(v.begin(), v.end());
}

std::uint64_t ApexIndex::key(std::span<const Vertex> others) const {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < others.size(); ++i) k += others[i] * radix_[i];
  return k;
}

std::span<const Vertex> ApexIndex::apexes(std::span<const Vertex> others) const {
  auto it = lists_.find(key(others));
  if (it == lists_.end()) return {};
  return it->second;
}

// ---------------------------------------------------------------------------
// PartiteHypergraph

PartiteHypergraph::PartiteHypergraph(std::vector<std::size_t> part_sizes,
                                     std::vector<std::vector<Vertex>> edges)
    : part_sizes_(std::move(part_sizes)) {
  const std::size_t d = part_sizes_.size();
  if (d < 2) throw InvalidInput("host hypergraph needs d >= 2 parts");
  for (auto n : part_sizes_)
    if (n > std::numeric_limits<Vertex>::max()) throw InvalidInput("host part too large");
  for (const auto& e : edges) {
    if (e.size() != d) throw InvalidInput("host edge has the wrong arity");
    for (std::size_t j = 0; j < d; ++j)
      if (e[j] >= part_sizes_[j]) throw InvalidInput("host edge index out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw InvalidInput("duplicate host edge");
  flat_.reserve(edges.size() * d);
  for (const auto& e : edges) flat_.insert(flat_.end(), e.begin(), e.end());
  index_cache_.resize(d);
}

PartiteHypergraph::PartiteHypergraph(const PartiteHypergraph& other)
    : part_sizes_(other.part_sizes_), flat_(other.flat_) {
  index_cache_.resize(part_sizes_.size());
}

PartiteHypergraph& PartiteHypergraph::operator=(const PartiteHypergraph& other) {
  if (this != &other) {
    part_sizes_ = other.part_sizes_;
    flat_ = other.flat_;
    std::lock_guard lock(index_mutex_);
    index_cache_.clear();
    index_cache_.resize(part_sizes_.size());
  }
  return *this;
}

PartiteHypergraph::PartiteHypergraph(PartiteHypergraph&& other) noexcept
    : part_sizes_(std::move(other.part_sizes_)),
      flat_(std::move(other.flat_)),
      index_cache_(std::move(other.index_cache_)) {}

PartiteHypergraph& PartiteHypergraph::operator=(PartiteHypergraph&& other) noexcept {
  if (this != &other) {
    part_sizes_ = std::move(other.part_sizes_);
    flat_ = std::move(other.flat_);
    std::lock_guard lock(index_mutex_);
    index_cache_ = std::move(other.index_cache_);
  }
  return *this;
}

PartiteHypergraph::~PartiteHypergraph() = default;

std::size_t PartiteHypergraph::num_vertices() const {
  return std::accumulate(part_sizes_.begin(), part_sizes_.end(), std::size_t{0});
}

bool PartiteHypergraph::has_edge(std::span<const Vertex> e) const {
  const std::size_t dd = d();
  if (e.size() != dd) return false;
  std::size_t lo = 0, hi = edge_count();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    auto cand = edge(mid);
    if (std::lexicographical_compare(cand.begin(), cand.end(), e.begin(), e.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < edge_count() && std::equal(e.begin(), e.end(), edge(lo).begin());
}

const ApexIndex& PartiteHypergraph::apex_index(std::size_t apex_side) const {
  if (apex_side >= d()) throw InvalidInput("apex side out of range");
  std::lock_guard lock(index_mutex_);
  if (index_cache_.size() != d()) index_cache_.resize(d());
  auto& slot = index_cache_[apex_side];
  if (!slot) slot = std::make_unique<ApexIndex>(apex_side, part_sizes_, flat_);
  return *slot;
}

std::vector<Vertex> codegree(const PartiteHypergraph& G, std::span<const Vertex> w, std::size_t apex_side) {
  if (apex_side >= G.d()) throw InvalidInput("apex side out of range");
  if (w.size() + 1 != G.d()) throw InvalidInput("codegree needs one vertex per non-apex part");
  std::size_t k = 0;
  for (std::size_t j = 0; j < G.d(); ++j) {
    if (j == apex_side) continue;
    if (w[k] >= G.part_sizes()[j]) throw InvalidInput("codegree vertex out of range");
    ++k;
  }
  auto span = G.apex_index(apex_side).apexes(w);
  return {span.begin(), span.end()};
}

// ---------------------------------------------------------------------------
// Apex search

PartAssignment identity_assignment(std::size_t d) {
  PartAssignment s(d);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return s;
}

namespace {

bool fits(const PartiteHypergraph& G, const Pattern& H, const PartAssignment& sigma) {
  for (std::size_t i = 0; i < H.num_parts(); ++i)
    if (H.part_sizes()[i] > G.part_sizes()[sigma[i]]) return false;
  return true;
}

void validate_assignment(const PartiteHypergraph& G, const Pattern& H, const PartAssignment& sigma) {
  if (H.uniformity() != G.d()) throw InvalidInput("pattern and host have different uniformity");
  if (sigma.size() != G.d()) throw InvalidInput("part assignment has the wrong length");
  std::vector<bool> used(G.d(), false);
  for (auto s : sigma) {
    if (s >= G.d() || used[s]) throw InvalidInput("part assignment is not a permutation");
    used[s] = true;
  }
}

// Depth-first search over pattern vertices in (part, index) order.
class ApexSearch {
 public:
  ApexSearch(const PartiteHypergraph& G, const Pattern& H, const PartAssignment& sigma)
      : G_(G), H_(H), sigma_(sigma), apex_(sigma[G.d() - 1]), index_(G.apex_index(apex_)) {
    const std::size_t parts = H.num_parts();
    for (std::size_t i = 0; i < parts; ++i) {
      for (std::size_t j = 0; j < H.part_sizes()[i]; ++j) order_.push_back({i, j});
      offset_.push_back(i == 0 ? 0 : offset_[i - 1] + H.part_sizes()[i - 1]);
    }
    // host slot of each pattern part among the non-apex host parts
    slot_.resize(parts);
    for (std::size_t i = 0; i < parts; ++i) {
      std::size_t s = 0;
      for (std::size_t j = 0; j < sigma[i]; ++j)
        if (j != apex_) ++s;
      slot_[i] = s;
    }
    completes_.resize(order_.size());
    for (std::size_t e = 0; e < H.edge_count(); ++e) {
      std::size_t last = 0;
      for (std::size_t i = 0; i < parts; ++i) last = std::max(last, offset_[i] + H.edges()[e][i]);
      completes_[last].push_back(e);
    }
    apex_size_ = G.part_sizes()[apex_];
  }

  std::size_t first_choices() const { return G_.part_sizes()[sigma_[0]]; }

  struct Local {
    long long best = -1;
    std::vector<Vertex> phi;
    std::vector<Vertex> apexes;
  };

  // Explores the subtree where pattern vertex 0 maps to host vertex v0.
  Local run_subtree(Vertex v0) const {
    State st;
    st.phi.assign(order_.size(), 0);
    st.levels.assign(order_.size() + 1, {});
    st.universal.assign(order_.size() + 1, false);
    st.universal[0] = true;
    Local out;
    st.out = &out;
    place(st, 0, v0);
    return out;
  }

  Embedding to_embedding(const Local& l) const {
    Embedding e;
    e.sigma = sigma_;
    e.parts.resize(H_.num_parts());
    for (std::size_t i = 0; i < H_.num_parts(); ++i)
      e.parts[i].assign(l.phi.begin() + offset_[i], l.phi.begin() + offset_[i] + H_.part_sizes()[i]);
    e.common_apexes = l.apexes;
    return e;
  }

 private:
  struct State {
    std::vector<Vertex> phi;
    std::vector<std::vector<Vertex>> levels;  // running intersection after each position
    std::vector<bool> universal;
    std::vector<Vertex> others;
    std::vector<Vertex> scratch;
    Local* out = nullptr;
  };

  bool done(const State& st) const { return st.out->best == static_cast<long long>(apex_size_); }

  void place(State& st, std::size_t pos, Vertex v) const {
    const auto [part, idx] = order_[pos];
    // injective within a part
    for (std::size_t j = 0; j < idx; ++j)
      if (st.phi[offset_[part] + j] == v) return;
    st.phi[pos] = v;

    bool uni = st.universal[pos];
    std::vector<Vertex>& next = st.levels[pos + 1];
    if (!uni) next = st.levels[pos];
    for (std::size_t e : completes_[pos]) {
      st.others.assign(H_.num_parts(), 0);
      for (std::size_t i = 0; i < H_.num_parts(); ++i)
        st.others[slot_[i]] = st.phi[offset_[i] + H_.edges()[e][i]];
      auto list = index_.apexes(st.others);
      if (uni) {
        next.assign(list.begin(), list.end());
        uni = false;
      } else {
        st.scratch.clear();
        std::set_intersection(next.begin(), next.end(), list.begin(), list.end(),
                              std::back_inserter(st.scratch));
        next.swap(st.scratch);
      }
      if (static_cast<long long>(next.size()) <= st.out->best) return;
    }
    st.universal[pos + 1] = uni;
    const long long size = uni ? static_cast<long long>(apex_size_) : static_cast<long long>(next.size());
    if (size <= st.out->best) return;

    if (pos + 1 == order_.size()) {
      st.out->best = size;
      st.out->phi = st.phi;
      if (uni) {
        st.out->apexes.resize(apex_size_);
        std::iota(st.out->apexes.begin(), st.out->apexes.end(), Vertex{0});
      } else {
        st.out->apexes = next;
      }
      return;
    }
    const std::size_t host_part = sigma_[order_[pos + 1].first];
    const auto n = static_cast<Vertex>(G_.part_sizes()[host_part]);
    for (Vertex w = 0; w < n && !done(st); ++w) place(st, pos + 1, w);
  }

  const PartiteHypergraph& G_;
  const Pattern& H_;
  const PartAssignment& sigma_;
  std::size_t apex_;
  const ApexIndex& index_;
  std::size_t apex_size_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> order_;
  std::vector<std::size_t> offset_;
  std::vector<std::size_t> slot_;
  std::vector<std::vector<std::size_t>> completes_;
};

}  // namespace

ApexSearchResult max_common_apex(const PartiteHypergraph& G, const Pattern& H, const PartAssignment& sigma) {
  validate_assignment(G, H, sigma);
  if (!fits(G, H, sigma)) throw InvalidInput("pattern part larger than its host part");
  const ApexSearch search(G, H, sigma);
  const std::size_t n0 = search.first_choices();
  std::vector<ApexSearch::Local> locals(n0);
  parallel_tasks(n0, [&](std::size_t v) { locals[v] = search.run_subtree(static_cast<Vertex>(v)); });

  ApexSearchResult out;
  long long best = -1;
  std::size_t arg = 0;
  for (std::size_t v = 0; v < n0; ++v)
    if (locals[v].best > best) {
      best = locals[v].best;
      arg = v;
    }
  if (best < 0) return out;
  out.K = static_cast<std::size_t>(best);
  out.witness = search.to_embedding(locals[arg]);
  return out;
}

FreenessResult is_apex_free(const PartiteHypergraph& G, const Pattern& H, std::size_t k, FreenessMode mode) {
  FreenessResult out;
  PartAssignment sigma = identity_assignment(G.d());
  if (mode == FreenessMode::sided) {
    auto r = max_common_apex(G, H, sigma);
    out.K = r.K;
    out.witness = std::move(r.witness);
  } else {
    if (H.uniformity() != G.d()) throw InvalidInput("pattern and host have different uniformity");
    bool any = false;
    do {
      if (!fits(G, H, sigma)) continue;
      auto r = max_common_apex(G, H, sigma);
      if (!any || r.K > out.K) {
        out.K = r.K;
        out.witness = std::move(r.witness);
        any = true;
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  out.free = out.K < k;
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

BigInt count_homomorphisms(const UniformPattern& H, const PartiteHypergraph& G, std::uint64_t budget) {
  if (H.num_vertices > 8) throw BudgetExceeded("homomorphism pattern has more than 8 vertices");
  const std::size_t d = G.d();
  for (const auto& e : H.edges) {
    if (e.size() != d) throw InvalidInput("pattern edge size differs from host uniformity");
    for (auto v : e)
      if (v >= H.num_vertices) throw InvalidInput("pattern edge vertex out of range");
  }
  const std::size_t n = G.num_vertices();
  std::vector<std::size_t> part_of, local;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < G.part_sizes()[j]; ++i) {
      part_of.push_back(j);
      local.push_back(i);
    }

  // Isolated pattern vertices contribute a factor n each.
  std::vector<bool> touched(H.num_vertices, false);
  for (const auto& e : H.edges)
    for (auto v : e) touched[v] = true;
  std::vector<std::size_t> active;
  for (std::size_t v = 0; v < H.num_vertices; ++v)
    if (touched[v]) active.push_back(v);
  std::vector<std::size_t> pos_of(H.num_vertices, 0);
  for (std::size_t i = 0; i < active.size(); ++i) pos_of[active[i]] = i;

  std::vector<std::vector<std::size_t>> completes(active.size());
  for (std::size_t e = 0; e < H.edges.size(); ++e) {
    std::size_t last = 0;
    for (auto v : H.edges[e]) last = std::max(last, pos_of[v]);
    completes[last].push_back(e);
  }

  std::vector<std::size_t> img(H.num_vertices, 0);
  std::vector<Vertex> tuple(d);
  std::vector<bool> seen(d);
  std::uint64_t nodes = 0, count = 0;

  auto edge_ok = [&](const std::vector<std::size_t>& e) {
    std::fill(seen.begin(), seen.end(), false);
    for (auto v : e) {
      const std::size_t part = part_of[img[v]];
      if (seen[part]) return false;
      seen[part] = true;
      tuple[part] = static_cast<Vertex>(local[img[v]]);
    }
    return G.has_edge(tuple);
  };

  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == active.size()) {
      ++count;
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (++nodes > budget) throw BudgetExceeded("homomorphism count exceeded its node budget");
      img[active[pos]] = x;
      bool ok = true;
      for (auto e : completes[pos])
        if (!edge_ok(H.edges[e])) {
          ok = false;
          break;
        }
      if (ok) self(self, pos + 1);
    }
  };
  if (active.empty() || n > 0) rec(rec, 0);

  BigInt total = count;
  for (std::size_t i = active.size(); i < H.num_vertices; ++i) total *= n;
  return total;
}

double homomorphism_density(const UniformPattern& H, const PartiteHypergraph& G, std::uint64_t budget) {
  const BigInt hom = count_homomorphisms(H, G, budget);
  const double n = static_cast<double>(G.num_vertices());
  if (n == 0) return 0.0;
  return static_cast<double>(hom) / std::pow(n, static_cast<double>(H.num_vertices));
}

// ---------------------------------------------------------------------------
// Reports

EdgeBoundReport edge_bound_report(const PartiteHypergraph& G, std::uint64_t S, std::uint64_t p, double C_const) {
  if (S == 0 || p < 2 || !(C_const > 0)) throw InvalidInput("edge_bound_report needs S >= 1, p >= 2, C > 0");
  EdgeBoundReport r;
  r.e_G = G.edge_count();
  r.n = G.num_vertices();
  const double d = static_cast<double>(G.d());
  const double s = static_cast<double>(S);
  r.half_p_power = 0.5 * std::pow(static_cast<double>(p), d * s - 1);
  r.explicit_constant_bound =
      r.n == 0 ? 0.0
               : std::exp(-d * s * std::log(2.0) + (-d + 1 / s) * std::log(C_const) +
                          (d - 1 / s) * std::log(static_cast<double>(r.n)));
  r.meets_half_p_power = static_cast<double>(r.e_G) >= r.half_p_power;
  r.meets_explicit_constant = static_cast<double>(r.e_G) >= r.explicit_constant_bound;
  return r;
}

ZarankiewiczBoundReport zarankiewicz_bound_report(const PartiteHypergraph& G, std::uint64_t S, std::uint64_t p) {
  if (S == 0 || p < 2) throw InvalidInput("zarankiewicz_bound_report needs S >= 1, p >= 2");
  ZarankiewiczBoundReport r;
  r.e_G = G.edge_count();
  double prod = 1;
  for (std::size_t i = 0; i + 1 < G.d(); ++i) prod *= static_cast<double>(G.part_sizes()[i]);
  r.bound = 0.5 * std::pow(static_cast<double>(p), static_cast<double>(S) - 1) * prod;
  r.meets_bound = static_cast<double>(r.e_G) >= r.bound;
  return r;
}

double exponent_fit(std::span<const std::pair<double, double>> rows) {
  if (rows.size() < 2) throw InvalidInput("exponent_fit needs at least two rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].first > 0) || !(rows[i].second > 0)) throw InvalidInput("exponent_fit needs positive n and e");
    if (i > 0 && !(rows[i].first > rows[i - 1].first))
      throw InvalidInput("exponent_fit needs strictly increasing n");
  }
  double mx = 0, my = 0;
  for (const auto& [n, e] : rows) {
    mx += std::log(n);
    my += std::log(e);
  }
  mx /= static_cast<double>(rows.size());
  my /= static_cast<double>(rows.size());
  double sxy = 0, sxx = 0;
  for (const auto& [n, e] : rows) {
    const double x = std::log(n) - mx;
    sxy += x * (std::log(e) - my);
    sxx += x * x;
  }
  return sxy / sxx;
}

// ---------------------------------------------------------------------------
// Edge files

void write_edge_file(std::ostream& out, const PartiteHypergraph& G, std::uint64_t p, std::uint64_t N) {
  out << G.d() << ' ' << p << ' ' << N;
  for (auto n : G.part_sizes()) out << ' ' << n;
  out << '\n';
  for (std::size_t i = 0; i < G.edge_count(); ++i) {
    auto e = G.edge(i);
    for (std::size_t j = 0; j < e.size(); ++j) out << (j ? " " : "") << e[j];
    out << '\n';
  }
}

EdgeFile read_edge_file(std::istream& in) {
  std::string line;
  std::vector<std::uint64_t> header;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    header = split_ws(line);
    break;
  }
  if (header.size() < 3) throw InvalidInput("edge file header must be `d p N n_1 ... n_d`");
  const auto d = header[0];
  if (d < 2 || header.size() != 3 + d) throw InvalidInput("edge file header must be `d p N n_1 ... n_d`");
  std::vector<std::size_t> sizes(header.begin() + 3, header.end());
  std::vector<std::vector<Vertex>> edges;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    const auto nums = split_ws(line);
    if (nums.size() != d) throw InvalidInput("edge file line has the wrong arity");
    std::vector<Vertex> e;
    for (auto v : nums) {
      if (v > std::numeric_limits<Vertex>::max()) throw InvalidInput("edge file vertex out of range");
      e.push_back(static_cast<Vertex>(v));
    }
    edges.push_back(std::move(e));
  }
  return EdgeFile{header[1], header[2], PartiteHypergraph(std::move(sizes), std::move(edges))};
}

nlohmann::json to_json(const Embedding& e) {
  return {{"sigma", e.sigma}, {"parts", e.parts}, {"common_apexes", e.common_apexes}};
}

}  // namespace apexforge::hypergraph
