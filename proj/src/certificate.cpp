#include <fstream>
#include <sstream>

#include "apexforge/construct.hpp"
#include "apexforge/error.hpp"
#include "apexforge/rng.hpp"
#include "construct_detail.hpp"

namespace apexforge::construct {

using nlohmann::json;

namespace {

json budgets_json(const Budgets& b) { return {{"retries", b.retries}, {"enumeration", b.enumeration}}; }

Budgets budgets_from(const json& j) {
  Budgets b;
  b.retries = j.at("retries").get<std::uint32_t>();
  b.enumeration = j.at("enumeration").get<std::uint64_t>();
  return b;
}

json poly_list(const std::vector<poly::HomogPoly>& fs) {
  json arr = json::array();
  for (const auto& f : fs) arr.push_back(poly::to_json(f));
  return arr;
}

std::vector<poly::HomogPoly> polys_from(const json& arr, const gf::Field& F, std::size_t num_vars) {
  std::vector<poly::HomogPoly> out;
  for (const auto& j : arr) {
    auto f = poly::homog_from_json(j);
    if (!(f.field() == F)) throw InvalidInput("polynomial over the wrong field");
    if (f.num_vars() != num_vars) throw InvalidInput("polynomial has the wrong number of variables");
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<std::size_t> sizes_of(const std::vector<geometry::PointSet>& parts) {
  std::vector<std::size_t> out;
  for (const auto& X : parts) out.push_back(X.size());
  return out;
}

json turan_schedule_json(const hypergraph::Pattern& H, schedule::LogBase base) {
  const auto d = static_cast<unsigned>(H.uniformity());
  std::vector<std::uint64_t> sizes(H.part_sizes().begin(), H.part_sizes().end());
  std::vector<std::vector<std::uint64_t>> edges;
  for (const auto& e : H.edges()) {
    std::vector<std::uint64_t> one;
    for (auto v : e) one.push_back(v + 1);
    edges.push_back(one);
  }
  const auto sched = schedule::turan_schedule(d, sizes, edges, base);
  json j = schedule::to_json(sched);
  j["conditions"] = schedule::to_json(
      schedule::lem12_precondition_check(sched.N, 3, sched.r, sched.t, sched.l, sched.s));
  j["binomial_chain"] = schedule::turan_binomial_chain_holds(sched);
  return j;
}

json turan_params_json(const TuranParams& P, const hypergraph::Pattern& H) {
  json j;
  j["d"] = H.uniformity();
  j["S"] = H.edge_count();
  j["N"] = P.N;
  j["p"] = P.p;
  j["m"] = P.m;
  j["r"] = P.r;
  j["t"] = P.t;
  j["degrees"] = P.degrees;
  j["seed"] = P.seed;
  j["log_base"] = schedule::to_string(P.log_base);
  j["budgets"] = budgets_json(P.budgets);
  j["rng"] = std::string(Rng::kAlgorithm);
  j["pattern"] = detail::pattern_json(H);
  j["schedule"] = turan_schedule_json(H, P.log_base);
  return j;
}

json zar_params_json(const ZarInstance& inst) {
  const auto& P = inst.params;
  const auto& H = inst.pattern;
  json j;
  j["d"] = H.uniformity();
  j["S"] = H.edge_count();
  j["n"] = P.n;
  j["sizes"] = P.sizes;
  j["n_d"] = *P.n_d;
  j["N"] = inst.N;
  j["p"] = P.p;
  j["m"] = P.m;
  j["r"] = *P.r;
  j["degrees"] = inst.degrees;
  j["seed"] = P.seed;
  j["log_base"] = schedule::to_string(P.log_base);
  j["budgets"] = budgets_json(P.budgets);
  j["rng"] = std::string(Rng::kAlgorithm);
  j["pattern"] = detail::pattern_json(H);
  j["schedule"] = schedule::to_json(schedule::zarankiewicz_schedule(H.edge_count(), P.m));
  return j;
}

// Verification block minus the fields that depend only on the measured graph.
json turan_algebra_json(const std::vector<regseq::RegularityCertificate>& hilbert,
                        const std::vector<regseq::RegularityCertificate>& koszul,
                        const std::vector<regseq::RegularityCertificate>& fh,
                        const std::vector<regseq::IndependenceReport>& indep) {
  json reg_f = json::array(), reg_fh = json::array(), ind = json::array();
  for (std::size_t k = 0; k < hilbert.size(); ++k)
    reg_f.push_back({{"hilbert", regseq::to_json(hilbert[k])}, {"koszul", regseq::to_json(koszul[k])}});
  for (const auto& c : fh) reg_fh.push_back(regseq::to_json(c));
  for (const auto& r : indep) ind.push_back(regseq::to_json(r));
  return {{"regularity", {{"f", reg_f}, {"fh", reg_fh}}}, {"independence", ind}};
}

void add_check(VerifyReport& rep, std::string name, bool ok, std::string detail = {}) {
  rep.checks.push_back({std::move(name), ok, std::move(detail)});
}

// Compares every key of the recomputed verification block with the stored one.
void compare_blocks(VerifyReport& rep, const json& stored, const json& fresh) {
  std::string mismatched;
  for (const auto& [key, value] : fresh.items())
    if (!stored.contains(key) || stored.at(key) != value) mismatched += (mismatched.empty() ? "" : ", ") + key;
  add_check(rep, "stored_values", mismatched.empty(),
            mismatched.empty() ? "all recomputed values match" : "mismatch: " + mismatched);
}

bool same_edges(const hypergraph::PartiteHypergraph& G, const std::vector<std::vector<hypergraph::Vertex>>& edges) {
  if (G.edge_count() != edges.size()) return false;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto e = G.edge(i);
    if (!std::equal(e.begin(), e.end(), edges[i].begin(), edges[i].end())) return false;
  }
  return true;
}

void check_graph(VerifyReport& rep, const hypergraph::PartiteHypergraph& G,
                 const std::vector<geometry::PointSet>& parts, const json& stored_parts,
                 const poly::MultiHomogPoly& g, std::size_t last_limit) {
  const auto sizes = sizes_of(parts);
  const bool parts_ok = G.part_sizes() == sizes && stored_parts == json(sizes);
  add_check(rep, "parts", parts_ok, parts_ok ? "" : "part sizes differ from the rebuilt parts");
  add_check(rep, "edge_recheck", parts_ok && detail::edges_vanish(g, parts, G));
  const bool match = parts_ok && same_edges(G, detail::vanishing_edges(g, parts, last_limit));
  add_check(rep, "edge_set", match, match ? "" : "edge list differs from the zero set of g");
}

void check_measured(VerifyReport& rep, const Verification& v, bool turan) {
  add_check(rep, "edge_bound", v.meets_edge_bound,
            "e(G) = " + std::to_string(v.e_G) + ", bound = " + std::to_string(v.half_p_power));
  const std::size_t k = turan ? v.realized_k_unordered : v.realized_k;
  add_check(rep, "apex_cap", v.meets_apex_cap, "K = " + std::to_string(k) + ", cap = " + v.apex_cap.str());
  add_check(rep, "lang_weil", v.lang_weil_ok);
}

VerifyReport verify_turan(const json& doc, const hypergraph::PartiteHypergraph& G) {
  VerifyReport rep;
  const auto& pj = doc.at("params");
  TuranParams P;
  P.N = pj.at("N").get<std::size_t>();
  P.p = pj.at("p").get<std::uint32_t>();
  P.m = pj.at("m").get<unsigned>();
  P.r = pj.at("r").get<std::size_t>();
  P.t = pj.at("t").get<std::size_t>();
  P.degrees = pj.at("degrees").get<std::vector<unsigned>>();
  P.seed = pj.at("seed").get<std::uint64_t>();
  P.log_base = schedule::log_base_from_string(pj.at("log_base").get<std::string>());
  P.budgets = budgets_from(pj.at("budgets"));
  const auto H = detail::pattern_from_json(pj.at("pattern"));
  const std::size_t d = H.uniformity();
  if (P.N != H.edge_count() + P.r + P.t || P.degrees.size() != P.t || P.r < 1)
    throw InvalidInput("certificate parameters are inconsistent");
  if (doc.at("field").at("p").get<std::uint32_t>() != P.p) throw InvalidInput("field and params disagree on p");
  const auto F = gf::Field::prime(P.p);

  const auto& polys = doc.at("polynomials");
  if (polys.at("f").size() != d || polys.at("h").size() != d) throw InvalidInput("expected one f and h list per part");
  const auto g = poly::multi_from_json(polys.at("g"));
  if (!(g.field() == F) || g.groups() != std::vector<poly::VariableGroup>(d, {P.N + 1, P.m}))
    throw InvalidInput("g has the wrong shape");

  std::vector<regseq::RegularityCertificate> hilbert, koszul, fh;
  std::vector<regseq::IndependenceReport> indep;
  std::vector<geometry::PointSet> V;
  std::vector<std::size_t> f_sizes;
  bool f_ok = true, ind_ok = true, fh_ok = true;
  for (std::size_t k = 0; k < d; ++k) {
    const auto f = polys_from(polys.at("f")[k], F, P.N + 1);
    const auto h = polys_from(polys.at("h")[k], F, P.N + 1);
    if (f.size() != P.r || h.size() != P.t) throw InvalidInput("wrong number of f or h forms");
    for (std::size_t j = 0; j < P.r; ++j)
      if (f[j].degree() != P.m) throw InvalidInput("f form has the wrong degree");
    for (std::size_t j = 0; j < P.t; ++j)
      if (h[j].degree() != P.degrees[j]) throw InvalidInput("h form has the wrong degree");
    hilbert.push_back(regseq::is_regular_hilbert(P.N + 1, f));
    koszul.push_back(regseq::is_regular_koszul(P.N + 1, f));
    f_ok = f_ok && hilbert.back().verdict && koszul.back().verdict;
    const auto pts = geometry::variety_points(P.N, f, F, P.budgets.enumeration);
    f_sizes.push_back(pts.size());
    indep.push_back(regseq::is_swise_independent(pts, H.max_part_size(), P.m));
    ind_ok = ind_ok && indep.back().verdict;
    auto fhs = f;
    fhs.insert(fhs.end(), h.begin(), h.end());
    fh.push_back(regseq::is_regular_hilbert(P.N + 1, fhs));
    fh_ok = fh_ok && fh.back().verdict;
    V.push_back(geometry::variety_points(P.N, fhs, F, P.budgets.enumeration));
  }
  add_check(rep, "f_regularity", f_ok, "Hilbert and Koszul criteria on every f sequence");
  add_check(rep, "independence", ind_ok, "s-wise m-independence of every V(f_k)");
  add_check(rep, "fh_regularity", fh_ok, "Hilbert criterion on every (f_k, h_k)");
  check_graph(rep, G, V, doc.at("parts"), g, V.back().size());

  const auto v = detail::measure_turan(G, H, g, V, f_sizes, P);
  check_measured(rep, v, true);
  json fresh = to_json(v);
  fresh.update(turan_algebra_json(hilbert, koszul, fh, indep));
  compare_blocks(rep, doc.at("verification"), fresh);
  return rep;
}

VerifyReport verify_zar(const json& doc, const hypergraph::PartiteHypergraph& G) {
  VerifyReport rep;
  const auto& pj = doc.at("params");
  ZarParams P;
  P.n = pj.at("n").get<std::size_t>();
  P.sizes = pj.at("sizes").get<std::vector<std::size_t>>();
  P.n_d = pj.at("n_d").get<std::size_t>();
  P.p = pj.at("p").get<std::uint32_t>();
  P.m = pj.at("m").get<unsigned>();
  P.r = pj.at("r").get<std::size_t>();
  P.degrees = pj.at("degrees").get<std::vector<unsigned>>();
  P.seed = pj.at("seed").get<std::uint64_t>();
  P.log_base = schedule::log_base_from_string(pj.at("log_base").get<std::string>());
  P.budgets = budgets_from(pj.at("budgets"));
  const std::size_t N = pj.at("N").get<std::size_t>();
  const auto H = detail::pattern_from_json(pj.at("pattern"));
  const std::size_t d = H.uniformity();
  const std::size_t r = *P.r;
  if (P.sizes.size() != d - 1 || N != r + H.edge_count() || P.degrees->size() != r)
    throw InvalidInput("certificate parameters are inconsistent");
  if (doc.at("field").at("p").get<std::uint32_t>() != P.p) throw InvalidInput("field and params disagree on p");
  const auto F = gf::Field::prime(P.p);

  const auto& polys = doc.at("polynomials");
  const auto g = poly::multi_from_json(polys.at("g"));
  auto groups = std::vector<poly::VariableGroup>(d - 1, {P.n + 1, P.m});
  groups.push_back({N + 1, P.m});
  if (!(g.field() == F) || g.groups() != groups) throw InvalidInput("g has the wrong shape");
  const auto h = polys_from(polys.at("h"), F, N + 1);
  if (h.size() != r) throw InvalidInput("wrong number of h forms");
  for (std::size_t j = 0; j < r; ++j)
    if (h[j].degree() != (*P.degrees)[j]) throw InvalidInput("h form has the wrong degree");

  const auto reg = regseq::is_regular_hilbert(N + 1, h);
  add_check(rep, "h_regularity", reg.verdict, "Hilbert criterion on h");
  const auto Vh = geometry::variety_points(N, h, F, P.budgets.enumeration);
  const std::size_t stored_size = doc.at("verification").value("variety_size", std::size_t{0});
  add_check(rep, "variety_size", Vh.size() == stored_size && Vh.size() <= *P.n_d,
            "|V(h)(F_p)| = " + std::to_string(Vh.size()));

  std::vector<geometry::PointSet> parts;
  for (std::size_t i = 0; i + 1 < d; ++i) parts.push_back(detail::standard_points(P.n, P.sizes[i], F));
  if (Vh.size() <= *P.n_d) {
    parts.push_back(detail::pad_points(Vh, N, *P.n_d, F, P.budgets.enumeration));
  } else {
    parts.push_back(Vh);
  }
  check_graph(rep, G, parts, doc.at("parts"), g, Vh.size());

  const auto v = detail::measure_zar(G, H, g, parts, Vh.size(), *P.degrees, N, r, P);
  check_measured(rep, v, false);
  json fresh = to_json(v);
  fresh["regularity"] = {{"h", regseq::to_json(reg)}};
  fresh["variety_size"] = Vh.size();
  compare_blocks(rep, doc.at("verification"), fresh);
  return rep;
}

}  // namespace

Certificate make_certificate(const TuranResult& r, const std::string& edges_file) {
  const auto& inst = r.instance;
  const auto& P = inst.params;
  json doc;
  doc["version"] = kCertificateVersion;
  doc["mode"] = "turan";
  doc["field"] = {{"p", P.p}, {"e", 1}};
  doc["params"] = turan_params_json(P, inst.pattern);

  json f = json::array(), h = json::array();
  for (const auto& part : inst.f_parts) f.push_back(poly_list(part.f));
  for (const auto& hs : inst.h) h.push_back(poly_list(hs));
  doc["polynomials"] = {{"f", f}, {"h", h}, {"g", poly::to_json(inst.g)}};
  doc["parts"] = sizes_of(inst.V);
  doc["edges_file"] = edges_file;

  std::vector<regseq::RegularityCertificate> hilbert, koszul;
  std::vector<regseq::IndependenceReport> indep;
  for (const auto& part : inst.f_parts) {
    hilbert.push_back(part.hilbert);
    koszul.push_back(part.koszul);
    indep.push_back(part.independence);
  }
  json ver = to_json(r.verification);
  ver.update(turan_algebra_json(hilbert, koszul, inst.fh_regularity, indep));
  doc["verification"] = ver;

  json f_retries = json::array(), h_retries = json::array();
  for (const auto& part : inst.f_parts)
    f_retries.push_back({{"attempts", part.attempts}, {"failures", to_json(part.failures)}});
  for (std::size_t k = 0; k < inst.h_attempts.size(); ++k)
    h_retries.push_back({{"attempts", inst.h_attempts[k]}, {"failures", to_json(inst.h_failures[k])}});
  doc["retries"] = {{"f", f_retries},
                    {"h", h_retries},
                    {"g", {{"attempts", inst.g_attempts}, {"failures", to_json(inst.g_failures)}}}};
  doc["tool_version"] = APEXFORGE_VERSION;
  return Certificate{std::move(doc), r.graph};
}

Certificate make_certificate(const ZarResult& r, const std::string& edges_file) {
  const auto& inst = r.instance;
  json doc;
  doc["version"] = kCertificateVersion;
  doc["mode"] = "zarankiewicz";
  doc["field"] = {{"p", inst.params.p}, {"e", 1}};
  doc["params"] = zar_params_json(inst);
  doc["polynomials"] = {{"g", poly::to_json(inst.g)}, {"h", poly_list(inst.h)}};
  doc["parts"] = sizes_of(inst.Y);
  doc["edges_file"] = edges_file;
  json ver = to_json(r.verification);
  ver["regularity"] = {{"h", regseq::to_json(inst.h_regularity)}};
  ver["variety_size"] = inst.variety_size;
  doc["verification"] = ver;
  doc["retries"] = {{"attempts", inst.attempts}, {"failures", to_json(inst.failures)}};
  doc["tool_version"] = APEXFORGE_VERSION;
  return Certificate{std::move(doc), r.graph};
}

namespace {

std::filesystem::path edges_path(const json& doc, const std::filesystem::path& dir) {
  const std::filesystem::path rel = doc.at("edges_file").get<std::string>();
  if (rel.empty() || rel.is_absolute() || rel.has_parent_path())
    throw InvalidInput("edges_file must be a plain file name");
  return dir / rel;
}

}  // namespace

void emit_certificate(const Certificate& cert, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto cert_path = dir / "certificate.json";
  std::ofstream out(cert_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + cert_path.string());
  out << cert.doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + cert_path.string());

  const auto path = edges_path(cert.doc, dir);
  std::ofstream eout(path, std::ios::binary);
  if (!eout) throw std::runtime_error("cannot write " + path.string());
  hypergraph::write_edge_file(eout, cert.graph, cert.doc.at("field").at("p").get<std::uint64_t>(),
                              cert.doc.at("params").at("N").get<std::uint64_t>());
  if (!eout) throw std::runtime_error("write failed: " + path.string());
}

VerifyReport verify_certificate(const json& doc, const hypergraph::PartiteHypergraph& graph) {
  try {
    if (!doc.is_object()) throw InvalidInput("certificate is not a JSON object");
    if (doc.at("version").get<int>() != kCertificateVersion) throw InvalidInput("unsupported certificate version");
    const auto mode = doc.at("mode").get<std::string>();
    VerifyReport rep;
    if (mode == "turan")
      rep = verify_turan(doc, graph);
    else if (mode == "zarankiewicz")
      rep = verify_zar(doc, graph);
    else
      throw InvalidInput("unknown certificate mode '" + mode + "'");
    rep.ok = std::all_of(rep.checks.begin(), rep.checks.end(), [](const CheckResult& c) { return c.ok; });
    return rep;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed certificate: ") + e.what());
  }
}

VerifyReport verify_certificate(const std::filesystem::path& cert_path) {
  std::ifstream in(cert_path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + cert_path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("certificate is not valid JSON: ") + e.what());
  }
  std::filesystem::path epath;
  try {
    epath = edges_path(doc, cert_path.parent_path());
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed certificate: ") + e.what());
  }
  std::ifstream ein(epath, std::ios::binary);
  if (!ein) throw InvalidInput("cannot read edge file " + epath.string());
  auto ef = hypergraph::read_edge_file(ein);
  VerifyReport rep = verify_certificate(doc, ef.graph);
  bool header_ok = false;
  try {
    header_ok = ef.p == doc.at("field").at("p").get<std::uint64_t>() &&
                ef.N == doc.at("params").at("N").get<std::uint64_t>();
  } catch (const json::exception&) {
  }
  rep.checks.insert(rep.checks.begin(), {"edge_file_header", header_ok, "d p N header matches the certificate"});
  rep.ok = rep.ok && header_ok;
  return rep;
}

nlohmann::json to_json(const VerifyReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"ok", r.ok}, {"checks", checks}};
}

}  // namespace apexforge::construct
