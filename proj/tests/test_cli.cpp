#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "apexforge/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "apexforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = apexforge::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("apexforge_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const std::vector<std::string> kPattern{"--parts", "2", "--edges", "1;2"};

std::vector<std::string> with_pattern(std::vector<std::string> args) {
  args.insert(args.end(), kPattern.begin(), kPattern.end());
  return args;
}

}  // namespace

TEST(CliParams, Turan) {
  const auto r = run({"params", "turan", "--d", "2", "--parts", "2", "--edges", "1;2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const auto& s = j.at("schedule");
  EXPECT_EQ(s.at("t"), 4);
  EXPECT_EQ(s.at("r"), 9);
  EXPECT_EQ(s.at("N"), 15);
  EXPECT_EQ(s.at("m"), nlohmann::json({2, 3, 4, 12}));
}

TEST(CliParams, Zarankiewicz) {
  const auto r = run({"params", "zarankiewicz", "--S", "4", "--m", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("schedule").at("r"), 2);
  EXPECT_EQ(j.at("schedule").at("t"), 2);
}

TEST(CliParams, InvalidInputExitsTwo) {
  EXPECT_EQ(run({"params", "turan", "--d", "2", "--parts", "2"}).code, 2);
  EXPECT_EQ(run({"params", "turan", "--d", "3", "--parts", "2", "--edges", "1;2"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliConstruct, TuranWritesVerifiableDeterministicCertificate) {
  const auto a = scratch("a"), b = scratch("b");
  const auto ra = run(with_pattern({"construct", "turan", "--p", "7", "--out", a.string()}));
  ASSERT_EQ(ra.code, 0) << ra.err;
  EXPECT_TRUE(nlohmann::json::parse(ra.out).at("ok").get<bool>());
  ASSERT_TRUE(fs::exists(a / "certificate.json"));
  ASSERT_EQ(run(with_pattern({"--threads", "1", "construct", "turan", "--p", "7", "--out", b.string()})).code, 0);
  EXPECT_EQ(slurp(a / "certificate.json"), slurp(b / "certificate.json"));
  EXPECT_EQ(slurp(a / "edges.txt"), slurp(b / "edges.txt"));

  EXPECT_EQ(run({"verify", (a / "certificate.json").string()}).code, 0);
  EXPECT_EQ(run({"verify", (a / "certificate.json").string(), "--mode", "zarankiewicz"}).code, 2);

  // Delete one edge line.
  {
    std::istringstream in(slurp(b / "edges.txt"));
    std::ostringstream kept;
    std::string line;
    for (int i = 0; std::getline(in, line); ++i)
      if (i != 1) kept << line << '\n';
    std::ofstream(b / "edges.txt", std::ios::trunc) << kept.str();
  }
  EXPECT_EQ(run({"verify", (b / "certificate.json").string()}).code, 1);

  // Lower the stored apex maximum.
  auto doc = nlohmann::json::parse(slurp(a / "certificate.json"));
  doc["verification"]["realized_k"] = doc["verification"]["realized_k"].get<int>() - 1;
  std::ofstream(a / "certificate.json", std::ios::trunc) << doc.dump(2) << '\n';
  EXPECT_EQ(run({"verify", (a / "certificate.json").string()}).code, 1);

  EXPECT_EQ(run({"verify", (a / "missing.json").string()}).code, 2);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(CliConstruct, BudgetZeroExitsThree) {
  const auto dir = scratch("budget");
  EXPECT_EQ(run(with_pattern({"construct", "turan", "--p", "7", "--retries", "0", "--out", dir.string()})).code, 3);
  fs::remove_all(dir);
}

TEST(CliConstruct, Zarankiewicz) {
  const auto dir = scratch("zar");
  const auto r = run({"construct", "zarankiewicz", "--p", "7", "--n", "2", "--sizes", "3,3", "--parts", "2,1",
                      "--edges", "1,1;2,1", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(run({"verify", (dir / "certificate.json").string(), "--mode", "zarankiewicz"}).code, 0);
  EXPECT_EQ(run({"construct", "zarankiewicz", "--sizes", "4,3", "--parts", "2,1", "--edges", "1,1;2,1", "--out",
                 dir.string()})
                .code,
            2);
  fs::remove_all(dir);
}

TEST(CliCensus, SinglePrimeHasNoFitRow) {
  const auto r = run(with_pattern({"census", "--primes", "7"}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find("fit,"), std::string::npos);
  EXPECT_EQ(r.out.rfind("# {", 0), 0u);
  EXPECT_NE(r.out.find("p,N,d,S,n_total,part_sizes,e_G,realized_K,target_exponent,fitted_slope"),
            std::string::npos);
}

TEST(CliCensus, FailedCellIsAnnotated) {
  // P^4 over GF(11) exceeds a 5000-point enumeration budget.
  const auto r = run(with_pattern({"census", "--primes", "3,7,11", "--enum-budget", "5000"}));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("11,4,2,2,FAILED"), std::string::npos);
  EXPECT_NE(r.out.find("\nfit,"), std::string::npos);
  EXPECT_EQ(run(with_pattern({"census", "--primes", "7,11", "--enum-budget", "5000"})).code, 3);
}

TEST(CliSelftest, CleanAndFaultInjected) {
  const auto ok = run({"selftest"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_NE(ok.out.find("regseq:"), std::string::npos);
  EXPECT_EQ(run({"selftest", "--inject-fault", "flip-hilbert"}).code, 1);
  EXPECT_EQ(run({"selftest", "--inject-fault", "nonsense"}).code, 2);
}
