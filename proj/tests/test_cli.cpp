#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "hclab/cli.hpp"
#include "hclab/json_io.hpp"

using hclab::io::json;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  args.insert(args.begin(), "hclab");
  std::ostringstream out, err;
  const int code = hclab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json report(const Invocation& r) {
  EXPECT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  const auto problems = hclab::io::validate_report(j);
  EXPECT_TRUE(problems.empty()) << (problems.empty() ? "" : problems.front());
  return j;
}

std::filesystem::path scratch_dir() {
  auto d = std::filesystem::temp_directory_path() / ("hclab_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, CheckBoundedShiftOnL1) {
  const json j = report(run({"check", "--pair", "bounded-shift", "--w", "2", "--space", "lp:1", "--no-timestamp"}));
  EXPECT_EQ(j["command"], "check");
  EXPECT_EQ(j["result"]["decay_class"], "scc-uniform");
  EXPECT_EQ(j["result"]["hypothesis1_ok"], true);
}

TEST(Cli, PeriodicDifferentiation) {
  const json j = report(run({"periodic", "--pair", "diff", "--a", "0", "--b", "1", "--seed", "1+2x", "--N", "2",
                             "--tol", "1e-8", "--no-timestamp"}));
  EXPECT_LE(j["result"]["residual"].get<double>(), 1e-8);
  EXPECT_EQ(j["pair"]["family"], "differentiation");
}

TEST(Cli, EigenOutsideDiskIsNumerical) {
  const Invocation r = run({"eigen", "--pair", "bounded-shift", "--w", "2", "--space", "lp:2", "--n", "1", "--lambda", "3+0i"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("AnnulusViolation"), std::string::npos);
  EXPECT_NE(r.err.find("lambda=3+0i"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrorsPrintGrammar) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"check"},
           {"bogus", "--pair", "bounded-shift"},
           {"check", "--pair", "bounded-shift", "--tol", "-1"},
           {"check", "--pair", "nope"},
           {"periodic", "--pair", "bounded-shift", "--seed", "1,,2", "--N", "1"},
           {"check", "--pair", "diff", "--space", "lp:2"},
           {"check", "--pair", "bounded-shift", "--space", "poly"},
           {"check", "--pair", "bounded-shift", "--transform", "power:0"},
           {"check", "--pair", "bounded-shift", "--format", "csv"},
           {"eigen", "--pair", "bounded-shift"}}) {
    const Invocation r = run(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? "" : args[0]);
    EXPECT_NE(r.err.find("usage: hclab"), std::string::npos);
  }
}

TEST(Cli, PreconditionErrors) {
  Invocation r = run({"eigen", "--pair", "bounded-shift", "--lambda", "1", "--seed", "0"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("ZeroVector"), std::string::npos);
  r = run({"iso", "--pair", "bounded-shift", "--lambda", "1", "--seed", "0,1"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("NotInKernel"), std::string::npos);
  r = run({"orbit", "--pair", "bounded-shift", "--seed", "1", "--targets", "/nonexistent/targets.json"});
  EXPECT_EQ(r.code, 4);
}

TEST(Cli, ReportsAreByteIdenticalWithoutTimestamp) {
  const std::vector<std::vector<std::string>> cmds = {
      {"check", "--pair", "unbounded-shift", "--samples", "4"},
      {"periodic", "--pair", "bounded-shift", "--seed", "1,0.5", "--N", "3"},
      {"eigen", "--pair", "unbounded-shift", "--lambda", "10", "--n", "2"},
      {"iso", "--pair", "diff", "--lambda", "2-i", "--n", "2", "--seed", "1+x"},
      {"iso", "--pair", "bounded-shift", "--lambda", "0", "--seed", "1", "--inverse"},
      {"hypercyclic", "--pair", "bounded-shift", "--K", "3"},
      {"scan", "--pair", "bounded-shift", "--grid", "-3:3:1.5,0"},
      {"orbit", "--pair", "bounded-shift", "--seed", "1,0.5", "--n-max", "20"},
      {"nonhc", "--pair", "bounded-shift", "--transform", "right-inverse"},
      {"kernel-range", "--pair", "diff", "--n", "2", "--support-cap", "8"}};
  for (auto args : cmds) {
    args.push_back("--no-timestamp");
    const Invocation first = run(args);
    const Invocation second = run(args);
    ASSERT_EQ(first.code, 0) << args[0] << ": " << first.err;
    EXPECT_EQ(first.out, second.out) << args[0];
    const json j = report(first);
    EXPECT_EQ(j["command"], args[0]);
    EXPECT_FALSE(j.contains("timestamp"));
  }
}

TEST(Cli, TimestampPresentByDefault) {
  const json j = report(run({"kernel-range", "--pair", "bounded-shift"}));
  ASSERT_TRUE(j.contains("timestamp"));
  EXPECT_EQ(j["timestamp"].get<std::string>().back(), 'Z');
}

TEST(Cli, ScanCsv) {
  const Invocation r = run({"scan", "--pair", "bounded-shift", "--grid", "0:3:1,0", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "lambda_re,lambda_im,n,status,residual,predicted");
  EXPECT_NE(r.out.find("1,0,1,Constructed,"), std::string::npos);
  EXPECT_NE(r.out.find("3,0,1,Diverged,,OutsideOrUnknown"), std::string::npos);
}

TEST(Cli, TransformsAppearInReport) {
  const json j = report(run({"check", "--pair", "bounded-shift", "--transform", "power:2", "multiple:1.5",
                             "--no-timestamp"}));
  EXPECT_EQ(j["pair"]["transform"], "multiple");
  EXPECT_EQ(j["pair"]["base"]["transform"], "power");
}

TEST(Cli, OutWritesAtomically) {
  const auto dir = scratch_dir();
  const auto path = dir / "report.json";
  {
    std::ofstream(path) << "stale";
  }
  const Invocation r = run({"check", "--pair", "bounded-shift", "--no-timestamp", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const json j = json::parse(ss.str());
  EXPECT_TRUE(hclab::io::validate_report(j).empty());
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1u);
  std::filesystem::remove_all(dir);
}

TEST(Cli, TargetsFile) {
  const auto dir = scratch_dir();
  const auto path = dir / "targets.json";
  {
    std::ofstream(path) << R"([{"space":{"kind":"lp","p":2},"coeffs":[[1,0]]}])";
  }
  const json j = report(run({"orbit", "--pair", "bounded-shift", "--seed", "1", "--targets", path.string(),
                             "--no-timestamp"}));
  ASSERT_EQ(j["result"]["matches"].size(), 1u);
  EXPECT_EQ(j["result"]["matches"][0]["best_n"], 0);
  std::filesystem::remove_all(dir);
}

TEST(Cli, BinaryExitCodes) {
  const auto call = [](const std::string& args) {
    const std::string cmd = std::string(HCLAB_CLI_BINARY) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  EXPECT_EQ(call("check --pair bounded-shift --w 2 --space lp:1"), 0);
  EXPECT_EQ(call("check"), 2);
  EXPECT_EQ(call("eigen --pair bounded-shift --lambda 3+0i"), 3);
  EXPECT_EQ(call("eigen --pair bounded-shift --lambda 1 --seed 0"), 4);
}
