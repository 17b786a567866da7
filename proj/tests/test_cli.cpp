#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"

using namespace remote_vm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "remote-vm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(REMOTE_VM_DATA_DIR) + "/" + name; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("remote_vm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ExtractPath5) {
  auto r = invoke({"extract", data("path5.txt"), "--n", "2", "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("r_g(2)=1\n"), std::string::npos) << r.out;
}

TEST_F(Cli, ExtractButterfly) {
  EXPECT_NE(invoke({"extract", data("butterfly.txt"), "--n", "2", "--seed", "1"}).out.find("r_g(2)=2\n"), std::string::npos);
  EXPECT_NE(invoke({"extract", data("butterfly.txt"), "--n", "9", "--seed", "1"}).out.find("r_g(9)=0\n"), std::string::npos);
}

TEST_F(Cli, ExtractWithoutSeedPrintsOne) {
  auto r = invoke({"extract", data("crown5.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("seed=", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("r_g(2)=3"), std::string::npos);
}

TEST_F(Cli, ExtractErrors) {
  auto bad = path("bad.txt");
  write_file(bad, "P1: 1 2\nP2: 3\n1 2\n");
  auto r = invoke({"extract", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("(1,2)"), std::string::npos) << r.err;

  auto split = path("split.txt");
  write_file(split, "P1: 1 2\nP2: 3 4\n1 3\n2 4\n");
  EXPECT_EQ(invoke({"extract", split, "--seed", "1"}).code, 3);

  EXPECT_EQ(invoke({"extract", path("missing.txt")}).code, 2);
  EXPECT_EQ(invoke({"extract", data("path5.txt"), "--n", "1"}).code, 2);
  EXPECT_EQ(invoke({"extract", data("path5.txt"), "--partition", "p3"}).code, 2);
  EXPECT_EQ(invoke({"bogus"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
}

TEST_F(Cli, Oracle) {
  EXPECT_EQ(invoke({"oracle", data("butterfly.txt"), "--n", "2"}).out, "I: 2 {1,2}; II: 0\n");
  EXPECT_EQ(invoke({"oracle", data("two_fan.txt"), "--n", "2"}).out, "I: 1; II: 2 {2,3}\n");
  EXPECT_EQ(invoke({"oracle", data("k33.txt")}).out, "I: 0; II: 0\n");
  auto r = invoke({"oracle", data("crown5.json"), "--cap", "3"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("InstanceTooLarge"), std::string::npos) << r.err;
}

TEST_F(Cli, GenerateBipartite) {
  auto out = path("g.json");
  auto r = invoke({"generate", "--model", "bipartite", "--p1", "25", "--p2", "25", "--m", "300", "--seed", "1", "--out", out});
  EXPECT_EQ(r.code, 0) << r.err;
  auto g = load_bipartite(out);
  EXPECT_EQ(g.edge_count(), 300u);
  EXPECT_TRUE(is_connected(g));

  auto full = path("k.txt");
  EXPECT_EQ(invoke({"generate", "--p1", "25", "--p2", "25", "--m", "625", "--seed", "2", "--format", "edges", "--out", full}).code,
            0);
  EXPECT_EQ(load_bipartite(full), fixtures::complete(25, 25));
}

TEST_F(Cli, GenerateOutOfRange) {
  auto r = invoke({"generate", "--p1", "10", "--p2", "40", "--m", "48", "--seed", "1"});
  EXPECT_EQ(r.code, 5);
  EXPECT_NE(r.err.find("[49, 400]"), std::string::npos) << r.err;
}

TEST_F(Cli, GenerateGeneralTopologies) {
  auto out = path("as.json");
  EXPECT_EQ(invoke({"generate", "--model", "as", "--nodes", "50", "--m", "90", "--seed", "3", "--out", out}).code, 0);
  auto g = general_from_json(nlohmann::json::parse(read_file(out)));
  EXPECT_EQ(g.edge_count(), 90u);

  auto sub = path("ppi.txt");
  auto r = invoke({"generate", "--model", "ppi", "--nodes", "50", "--m", "70", "--seed", "3", "--subgraph", "30",
                "--format", "edges", "--out", sub});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_bipartite(sub).vertex_count(), 30u);

  EXPECT_EQ(invoke({"generate", "--model", "www", "--m", "90"}).code, 2);
  EXPECT_EQ(invoke({"generate", "--model", "bipartite", "--p1", "5", "--m", "9"}).code, 2);
  EXPECT_EQ(invoke({"generate", "--model", "mesh", "--nodes", "5", "--m", "9"}).code, 2);
}

TEST_F(Cli, RoundTripGenerateExtractVerify) {
  for (int s = 0; s < 10; ++s) {
    auto graph = path("rt.json");
    auto result = path("rt_result.json");
    auto seed = std::to_string(s);
    ASSERT_EQ(invoke({"generate", "--p1", "20", "--p2", "30", "--m", std::to_string(60 + 40 * s), "--seed", seed, "--out", graph})
                  .code,
              0);
    ASSERT_EQ(invoke({"extract", graph, "--n", std::to_string(2 + s % 3), "--seed", seed, "--restarts", "2", "--out", result})
                  .code,
              0);
    auto r = invoke({"verify", "--graph", graph, "--result", result});
    EXPECT_EQ(r.code, 0) << r.err;
  }
}

TEST_F(Cli, VerifyRejectsTampering) {
  auto result = path("r.json");
  ASSERT_EQ(invoke({"extract", data("butterfly.txt"), "--seed", "1", "--out", result}).code, 0);
  auto doc = nlohmann::json::parse(read_file(result));

  auto volume = doc;
  volume["volume"] = 7;
  write_file(path("volume.json"), volume.dump());
  auto r = invoke({"verify", "--graph", data("butterfly.txt"), "--result", path("volume.json")});
  EXPECT_EQ(r.code, 6);
  EXPECT_NE(r.err.find("volume != |members|"), std::string::npos) << r.err;

  auto mass = doc;
  mass["n"] = 3;
  write_file(path("mass.json"), mass.dump());
  r = invoke({"verify", "--graph", data("butterfly.txt"), "--result", path("mass.json")});
  EXPECT_EQ(r.code, 6);
  EXPECT_NE(r.err.find("cardinality"), std::string::npos) << r.err;

  write_file(path("junk.json"), "{");
  EXPECT_EQ(invoke({"verify", "--graph", data("butterfly.txt"), "--result", path("junk.json")}).code, 2);
}

TEST_F(Cli, SweepWritesFiles) {
  auto out = path("sweep");
  auto r = invoke({"sweep", "--scenario", "bipartite:5,5", "--n", "2,3", "--m-range", "9:25:8", "--trials", "3", "--seed",
                "4", "--out-dir", out});
  EXPECT_EQ(r.code, 0) << r.err;
  for (const char* f : {"trials.csv", "aggregate.csv", "summary.json"}) EXPECT_TRUE(fs::exists(fs::path(out) / f)) << f;
  EXPECT_FALSE(fs::exists(fs::path(out) / "comparison.csv"));
  auto agg = read_file((fs::path(out) / "aggregate.csv").string());
  EXPECT_EQ(std::count(agg.begin(), agg.end(), '\n'), 1 + 3 * 2);
}

TEST_F(Cli, SweepSingleTrialMatchesRecord) {
  auto out = path("one");
  ASSERT_EQ(invoke({"sweep", "--scenario", "bipartite:6,6", "--m-range", "20:20:1", "--trials", "1", "--seed", "5",
                 "--out-dir", out})
                .code,
            0);
  auto trials = read_file((fs::path(out) / "trials.csv").string());
  auto agg = read_file((fs::path(out) / "aggregate.csv").string());
  auto row = trials.substr(trials.find('\n') + 1);
  auto arow = agg.substr(agg.find('\n') + 1);
  // trial columns r_tilde,r_g are 9th and 10th (after the quoted scenario)
  std::vector<std::string> cols;
  std::stringstream ss(row.substr(row.find("\",") + 2));
  for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
  ASSERT_GE(cols.size(), 9u);
  auto r_g = std::stod(cols[8]);
  std::vector<std::string> acols;
  std::stringstream as(arow.substr(arow.find("\",") + 2));
  for (std::string c; std::getline(as, c, ',');) acols.push_back(c);
  EXPECT_EQ(std::stod(acols[3]), r_g);  // mean_r
  EXPECT_EQ(std::stod(acols[6]), r_g);  // min_r
}

TEST_F(Cli, CompareAndDeterminism) {
  auto a = path("a"), b = path("b");
  std::vector<std::string> base{"compare", "--scenario", "bipartite:10,15", "--m-range", "24:150:42", "--trials", "5",
                                "--seed", "9", "--restarts", "2"};
  auto args_a = base, args_b = base;
  args_a.insert(args_a.end(), {"--out-dir", a});
  args_b.insert(args_b.end(), {"--out-dir", b, "--jobs", "3"});
  ASSERT_EQ(invoke(args_a).code, 0);
  ASSERT_EQ(invoke(args_b).code, 0);
  for (const char* f : {"trials.csv", "aggregate.csv", "summary.json", "comparison.csv"}) {
    EXPECT_EQ(read_file((fs::path(a) / f).string()), read_file((fs::path(b) / f).string())) << f;
  }
}

TEST_F(Cli, SweepOutDirFromEnvironment) {
  auto out = path("env");
  ::setenv("REMOTE_VM_OUT_DIR", out.c_str(), 1);
  auto r = invoke({"sweep", "--scenario", "bipartite:4,4", "--m-range", "7:16:9", "--trials", "2", "--seed", "1"});
  ::unsetenv("REMOTE_VM_OUT_DIR");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(fs::path(out) / "trials.csv"));
}

TEST_F(Cli, SweepConfigErrors) {
  auto out = path("bad");
  EXPECT_EQ(invoke({"sweep", "--scenario", "bipartite:10,40", "--m-range", "48:60:1", "--out-dir", out}).code, 5);
  EXPECT_EQ(invoke({"sweep", "--scenario", "ring:5", "--out-dir", out}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--scenario", "internet:bipartite", "--out-dir", out}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--m-range", "1:x", "--out-dir", out}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--trials", "0", "--out-dir", out}).code, 2);
  EXPECT_FALSE(fs::exists(fs::path(out) / "trials.csv"));
}
