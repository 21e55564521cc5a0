#include "apexforge/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "apexforge/construct.hpp"
#include "apexforge/error.hpp"
#include "apexforge/parallel.hpp"
#include "apexforge/rng.hpp"
#include "apexforge/schedule.hpp"
#include "apexforge/selftest.hpp"

namespace apexforge::cli {

namespace {

using nlohmann::json;

struct PatternArgs {
  std::string file;
  std::string parts;
  std::string edges;

  void add(CLI::App& cmd) {
    cmd.add_option("--pattern", file, "pattern file: `d s_1 ... s_{d-1}` then one edge per line (1-based)");
    cmd.add_option("--parts", parts, "pattern part sizes, comma separated (e.g. 2,1)");
    cmd.add_option("--edges", edges, "pattern edges, ';' between edges and ',' inside (e.g. 1,1;2,1)");
  }

  hypergraph::Pattern load() const {
    if (!file.empty()) {
      if (!parts.empty() || !edges.empty()) throw InvalidInput("use either --pattern or --parts/--edges");
      std::ifstream in(file);
      if (!in) throw InvalidInput("cannot read pattern file " + file);
      return hypergraph::Pattern::parse(in);
    }
    if (parts.empty() || edges.empty()) throw InvalidInput("a pattern needs --parts and --edges (or --pattern)");
    return hypergraph::Pattern::from_spec(parts, edges);
  }
};

struct TuranArgs {
  std::size_t N = 4;
  std::uint32_t p = 11;
  unsigned m = 3;
  std::size_t r = 1;
  std::size_t t = 1;
  std::vector<unsigned> degrees{2};

  void add(CLI::App& cmd, bool with_p) {
    cmd.add_option("--N", N, "ambient dimension N = S + r + t")->capture_default_str();
    if (with_p) cmd.add_option("--p", p, "field characteristic")->capture_default_str();
    cmd.add_option("--m", m, "degree of the f forms and of g")->capture_default_str();
    cmd.add_option("--r", r, "number of f forms per part")->capture_default_str();
    cmd.add_option("--t", t, "number of h forms per part")->capture_default_str();
    cmd.add_option("--degrees", degrees, "h degrees m_1..m_t")->delimiter(',')->capture_default_str();
  }

  construct::TuranParams params() const {
    construct::TuranParams P;
    P.N = N;
    P.p = p;
    P.m = m;
    P.r = r;
    P.t = t;
    P.degrees = degrees;
    return P;
  }
};

struct CommonArgs {
  std::uint64_t seed = 0;
  std::uint32_t retries = 50;
  std::uint64_t enumeration = geometry::kDefaultEnumerationBudget;
  std::string log_base = "2";

  void add(CLI::App& cmd) {
    cmd.add_option("--seed", seed, "master seed")->capture_default_str();
    cmd.add_option("--retries", retries, "retry budget per sampling stage")->capture_default_str();
    cmd.add_option("--enum-budget", enumeration, "cap on points visited by one enumeration")->capture_default_str();
    cmd.add_option("--log-base", log_base, "logarithm base in schedule formulas (2 or e)")->capture_default_str();
  }

  construct::Budgets budgets() const { return {retries, enumeration}; }
};

json run_config(const std::string& command, std::uint64_t seed, const construct::Budgets& b,
                const std::string& log_base) {
  return {{"command", command},
          {"seed", seed},
          {"budgets", {{"retries", b.retries}, {"enumeration", b.enumeration}}},
          {"log_base", log_base},
          {"rng", std::string(Rng::kAlgorithm)},
          {"tool_version", APEXFORGE_VERSION}};
}

std::vector<std::vector<std::uint64_t>> one_based_edges(const hypergraph::Pattern& H) {
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& e : H.edges()) {
    std::vector<std::uint64_t> x;
    for (auto v : e) x.push_back(v + 1);
    out.push_back(x);
  }
  return out;
}

int finish_construct(const construct::Certificate& cert, const std::string& out_dir, std::ostream& out) {
  construct::emit_certificate(cert, out_dir);
  const auto report = construct::verify_certificate(std::filesystem::path(out_dir) / "certificate.json");
  const auto& v = cert.doc.at("verification");
  json summary{{"ok", report.ok},
               {"out", out_dir},
               {"mode", cert.doc.at("mode")},
               {"parts", cert.doc.at("parts")},
               {"e_G", v.at("e_G")},
               {"realized_k", v.at("realized_k")},
               {"realized_k_unordered", v.at("realized_k_unordered")},
               {"bounds", v.at("bounds")},
               {"retries", cert.doc.at("retries")}};
  if (!report.ok) summary["report"] = construct::to_json(report);
  out << summary.dump(2) << '\n';
  return report.ok ? 0 : 1;
}

std::string join(const std::vector<std::size_t>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random algebraic constructions of apex-free partite hypergraphs", "apexforge"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (default: APEXFORGE_THREADS or all cores)");
  app.set_version_flag("--version", APEXFORGE_VERSION);

  // params
  auto* params = app.add_subcommand("params", "print a parameter schedule with its feasibility report");
  params->require_subcommand(1);
  auto* params_turan = params->add_subcommand("turan", "Turan schedule for the apex hypergraph H(s_d)");
  unsigned d_arg = 0;
  std::string params_log_base = "2";
  PatternArgs params_pattern;
  params_turan->add_option("--d", d_arg, "uniformity d (checked against the pattern)");
  params_turan->add_option("--log-base", params_log_base, "logarithm base (2 or e)")->capture_default_str();
  params_pattern.add(*params_turan);
  auto* params_zar = params->add_subcommand("zarankiewicz", "Zarankiewicz schedule r, t(m)");
  std::uint64_t zS = 0, zm = 3, zt = 0;
  std::vector<std::uint64_t> zsizes;
  params_zar->add_option("--S", zS, "number of pattern edges")->required();
  params_zar->add_option("--m", zm, "degree m")->capture_default_str();
  params_zar->add_option("--sizes", zsizes, "part sizes s_1..s_d for the feasibility check")->delimiter(',');
  params_zar->add_option("--t", zt, "t for the feasibility check (default t(m))");

  // construct
  auto* cons = app.add_subcommand("construct", "build, certify and re-verify one instance");
  cons->require_subcommand(1);
  auto* cons_turan = cons->add_subcommand("turan", "Turan host from independent complete intersections");
  TuranArgs turan_args;
  CommonArgs cons_common;
  PatternArgs cons_pattern;
  std::string out_dir = "out";
  turan_args.add(*cons_turan, true);
  cons_common.add(*cons_turan);
  cons_pattern.add(*cons_turan);
  cons_turan->add_option("--out", out_dir, "output directory")->capture_default_str();

  auto* cons_zar = cons->add_subcommand("zarankiewicz", "three-step Zarankiewicz host");
  construct::ZarParams zar;
  std::size_t zar_nd = 0, zar_r = 0;
  std::vector<unsigned> zar_degrees;
  CommonArgs zar_common;
  PatternArgs zar_pattern;
  cons_zar->add_option("--p", zar.p, "field characteristic")->capture_default_str();
  cons_zar->add_option("--n", zar.n, "ambient dimension of parts 1..d-1")->capture_default_str();
  cons_zar->add_option("--sizes", zar.sizes, "n_1..n_{d-1}")->delimiter(',')->capture_default_str();
  cons_zar->add_option("--nd", zar_nd, "n_d (default 2 p^S prod m_j)");
  cons_zar->add_option("--m", zar.m, "degree of g")->capture_default_str();
  cons_zar->add_option("--r", zar_r, "number of h forms (default ceil(sqrt S))");
  cons_zar->add_option("--degrees", zar_degrees, "h degrees m_1..m_r")->delimiter(',');
  zar_common.add(*cons_zar);
  zar_pattern.add(*cons_zar);
  cons_zar->add_option("--out", out_dir, "output directory")->capture_default_str();

  // verify
  auto* ver = app.add_subcommand("verify", "recompute and check a certificate");
  std::string cert_path, ver_mode;
  ver->add_option("certificate", cert_path, "path to certificate.json")->required();
  ver->add_option("--mode", ver_mode, "expected mode (turan or zarankiewicz)");

  // census
  auto* census = app.add_subcommand("census", "Turan constructions over a list of primes plus an exponent fit");
  std::vector<std::uint32_t> primes{7, 11, 13, 17};
  TuranArgs census_args;
  CommonArgs census_common;
  PatternArgs census_pattern;
  std::string census_out;
  census->add_option("--primes", primes, "primes to sweep")->delimiter(',')->capture_default_str();
  census_args.add(*census, false);
  census_common.add(*census);
  census_pattern.add(*census);
  census->add_option("--csv", census_out, "write the CSV here instead of stdout");

  // selftest
  auto* self = app.add_subcommand("selftest", "reduced invariant suites for every module");
  std::string fault;
  self->add_option("--inject-fault", fault, "negative control: flip-hilbert");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (threads > 0) set_thread_count(threads);

    if (params->parsed()) {
      json doc;
      if (params_turan->parsed()) {
        const auto H = params_pattern.load();
        if (d_arg != 0 && d_arg != H.uniformity())
          throw InvalidInput("--d does not match the pattern (d = " + std::to_string(H.uniformity()) + ")");
        const auto base = schedule::log_base_from_string(params_log_base);
        std::vector<std::uint64_t> sizes(H.part_sizes().begin(), H.part_sizes().end());
        const auto sched =
            schedule::turan_schedule(static_cast<unsigned>(H.uniformity()), sizes, one_based_edges(H), base);
        doc["kind"] = "turan";
        doc["schedule"] = schedule::to_json(sched);
        doc["feasibility"] =
            schedule::to_json(schedule::lem12_precondition_check(sched.N, 3, sched.r, sched.t, sched.l, sched.s));
        doc["binomial_chain"] = schedule::turan_binomial_chain_holds(sched);
        const auto pb = schedule::product_bound_check(sched.t, sched.l, base);
        doc["product_bound"] = {{"product", pb.product.str()}, {"bound", pb.bound.str()}, {"holds", pb.holds}};
      } else {
        const auto sched = schedule::zarankiewicz_schedule(zS, zm);
        doc["kind"] = "zarankiewicz";
        doc["schedule"] = schedule::to_json(sched);
        if (!zsizes.empty()) {
          const auto rep = schedule::lem14_feasible(zsizes, zt ? zt : sched.t, sched.r, zm, zS);
          doc["feasibility"] = schedule::to_json(rep.report);
          doc["feasibility"]["threshold"] = rep.threshold.str();
        }
      }
      out << doc.dump(2) << '\n';
      return 0;
    }

    if (cons_turan->parsed()) {
      auto P = turan_args.params();
      P.seed = cons_common.seed;
      P.budgets = cons_common.budgets();
      P.log_base = schedule::log_base_from_string(cons_common.log_base);
      const auto res = construct::build_turan(P, cons_pattern.load());
      return finish_construct(construct::make_certificate(res), out_dir, out);
    }

    if (cons_zar->parsed()) {
      if (zar_nd) zar.n_d = zar_nd;
      if (zar_r) zar.r = zar_r;
      if (!zar_degrees.empty()) zar.degrees = zar_degrees;
      zar.seed = zar_common.seed;
      zar.budgets = zar_common.budgets();
      zar.log_base = schedule::log_base_from_string(zar_common.log_base);
      const auto res = construct::build_zarankiewicz(zar, zar_pattern.load());
      return finish_construct(construct::make_certificate(res), out_dir, out);
    }

    if (ver->parsed()) {
      if (!ver_mode.empty()) {
        if (ver_mode != "turan" && ver_mode != "zarankiewicz") throw InvalidInput("--mode must be turan or zarankiewicz");
        std::ifstream in(cert_path);
        if (!in) throw InvalidInput("cannot read " + cert_path);
        json doc;
        try {
          doc = json::parse(in);
        } catch (const json::exception& e) {
          throw InvalidInput(std::string("certificate is not valid JSON: ") + e.what());
        }
        if (doc.value("mode", "") != ver_mode) throw InvalidInput("certificate mode is not " + ver_mode);
      }
      const auto report = construct::verify_certificate(cert_path);
      out << construct::to_json(report).dump(2) << '\n';
      return report.ok ? 0 : 1;
    }

    if (census->parsed()) {
      const auto H = census_pattern.load();
      const auto d = H.uniformity();
      const auto S = H.edge_count();
      const double target = static_cast<double>(d) - 1.0 / static_cast<double>(S);
      std::ostringstream csv;
      json config = run_config("census", census_common.seed, census_common.budgets(), census_common.log_base);
      config["N"] = census_args.N;
      config["m"] = census_args.m;
      config["r"] = census_args.r;
      config["t"] = census_args.t;
      config["degrees"] = census_args.degrees;
      config["primes"] = primes;
      config["pattern"] = H.to_text();
      csv << "# " << config.dump() << '\n';
      csv << "p,N,d,S,n_total,part_sizes,e_G,realized_K,target_exponent,fitted_slope\n";
      csv << std::setprecision(10);
      std::vector<std::pair<double, double>> rows;
      std::size_t budget_failures = 0;
      for (auto p : primes) {
        auto P = census_args.params();
        P.p = p;
        P.seed = census_common.seed;
        P.budgets = census_common.budgets();
        P.log_base = schedule::log_base_from_string(census_common.log_base);
        csv << p << ',' << P.N << ',' << d << ',' << S << ',';
        try {
          const auto res = construct::build_turan(P, H);
          const auto& G = res.graph;
          csv << G.num_vertices() << ',' << join(G.part_sizes(), ';') << ',' << G.edge_count() << ','
              << res.verification.realized_k_unordered << ',' << target << ",\n";
          rows.emplace_back(static_cast<double>(G.num_vertices()), static_cast<double>(G.edge_count()));
        } catch (const BudgetExceeded& e) {
          ++budget_failures;
          csv << "FAILED,,,," << target << ",\n";
          err << "p = " << p << ": " << e.what() << '\n';
        }
      }
      std::sort(rows.begin(), rows.end());
      if (rows.size() >= 2) csv << "fit,,,,,,,,," << hypergraph::exponent_fit(rows) << '\n';
      if (census_out.empty()) {
        out << csv.str();
      } else {
        std::ofstream f(census_out);
        if (!f) throw std::runtime_error("cannot write " + census_out);
        f << csv.str();
      }
      const std::size_t need = std::min<std::size_t>(2, primes.size());
      if (rows.size() >= need) return 0;
      return budget_failures > 0 ? 3 : 1;
    }

    if (self->parsed()) {
      selftest::Faults faults;
      if (fault == "flip-hilbert")
        faults.flip_hilbert_verdict = true;
      else if (!fault.empty())
        throw InvalidInput("unknown fault '" + fault + "'");
      const auto results = selftest::run_all(out, faults);
      std::size_t failed = 0;
      for (const auto& r : results) failed += r.failed;
      out << (failed == 0 ? "selftest: all suites passed" : "selftest: FAILED") << '\n';
      return failed == 0 ? 0 : 1;
    }
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return 3;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace apexforge::cli
