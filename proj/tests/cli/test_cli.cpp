#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "metrik/io.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code = -1;
  json report;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = metrik::cli::run(args, out, err);
  o.err = err.str();
  if (!out.str().empty() && out.str().front() == '{') o.report = json::parse(out.str());
  return o;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("metrik-cli-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string generate(const std::vector<std::string>& args, const std::string& name) {
    auto full = args;
    full.push_back("--output");
    full.push_back(path(name));
    EXPECT_EQ(invoke(full).code, 0);
    return path(name);
  }

  fs::path dir_;
};

TEST_F(Cli, BoundNOfL) {
  const auto o = invoke({"bound", "n-of-l", "--l", "3"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.report["N"], 10);
  EXPECT_EQ(o.report["exactness"], "all-exact");
  EXPECT_EQ(o.report["schema"], metrik::cli::kReportSchema);
  EXPECT_EQ(o.report["verdict"], "success");
  EXPECT_EQ(invoke({"bound", "n-of-l", "--l", "4"}).report["exactness"], "bound");
}

TEST_F(Cli, BroomTipsPassSra) {
  const auto broom = generate({"gen", "broom", "--n", "20"}, "broom.json");
  const auto o = invoke({"sra", "check", broom, "--alpha", "0.5", "--subset", "tips"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.report["verdict"], "pass");
  EXPECT_EQ(o.report["inputs"][0]["path"], broom);
  EXPECT_EQ(o.report["inputs"][0]["fnv1a64"].get<std::string>().size(), 16u);
}

TEST_F(Cli, ZigzagCurveFails) {
  metrik::io::write_file(path("zigzag.json"),
                         R"({"coords": [[0, 0], [2, 0], [0.5, 0]], "norm": "l2"})");
  const auto o = invoke({"curve", "check", path("zigzag.json")});
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(o.report["verdict"], "violation");
  EXPECT_EQ(o.report["witness"]["t1"], 0);
  EXPECT_EQ(o.report["witness"]["t2"], 1);
  EXPECT_EQ(o.report["witness"]["t3"], 2);
}

TEST_F(Cli, UsageErrors) {
  const auto unknown = invoke({"frobnicate"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_FALSE(unknown.err.empty());
  EXPECT_EQ(unknown.report["verdict"], "error");
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"sra", "check", path("missing.json"), "--alpha", "0.5"}).code, 2);
  EXPECT_EQ(invoke({"beta", "--epsilon", "3"}).code, 2);
}

TEST_F(Cli, SeedIsMandatory) {
  const auto o = invoke({"atb", "calemma", "--dim", "2", "--epsilon", "0.5", "--trials", "10"});
  EXPECT_EQ(o.code, 2);
  EXPECT_EQ(invoke({"gen", "sample", "--dim", "2", "--count", "4"}).code, 2);
  EXPECT_EQ(invoke({"quasiconvex", "--objective", "sin-x1", "--dim", "2"}).code, 2);
  const auto seeded = invoke({"atb", "calemma", "--dim", "2", "--epsilon", "0.5", "--trials",
                              "10", "--seed", "4"});
  EXPECT_EQ(seeded.code, 0);
  EXPECT_EQ(seeded.report["seed"], 4);
}

TEST_F(Cli, DeterministicApartFromTiming) {
  const std::vector<std::vector<std::string>> commands{
      {"gen", "sample", "--dim", "3", "--count", "12", "--seed", "9"},
      {"atb", "calemma", "--dim", "3", "--epsilon", "0.7", "--trials", "500", "--seed", "1"},
      {"quasiconvex", "--objective", "sin-x1", "--dim", "2", "--trials", "300", "--seed", "2"},
      {"gen", "laakso", "--level", "3", "--sra-points", "3"},
  };
  for (const auto& cmd : commands) {
    auto a = invoke(cmd).report;
    auto b = invoke(cmd).report;
    a.erase("timing");
    b.erase("timing");
    EXPECT_EQ(a.dump(), b.dump());
  }
}

TEST_F(Cli, GeneratorsFeedCheckers) {
  const auto laakso = generate({"gen", "laakso", "--level", "4", "--sra-points", "4"}, "l.json");
  EXPECT_EQ(invoke({"sra", "check", laakso, "--alpha", "0.6", "--subset", "X"}).code, 0);
  EXPECT_EQ(invoke({"validate", laakso}).code, 0);
  const auto graph = generate({"gen", "laakso", "--level", "2", "--format", "graph"}, "g.json");
  const auto lrb = invoke({"lrb", graph, "--center", "r", "--horizon", "1"});
  EXPECT_EQ(lrb.code, 0);
  EXPECT_EQ(lrb.report["K"], 15.0);
  const auto heis = generate({"gen", "heisenberg", "--steps", "100"}, "h.json");
  const auto len = invoke({"curve", "length", heis});
  EXPECT_NEAR(len.report["length"].get<double>(), 35.449077018110320, 1e-9);
  const auto cayley = generate({"gen", "cayley", "--generators", "1,0;0,1", "--radius", "2"},
                               "c.json");
  EXPECT_EQ(invoke({"validate", cayley}).code, 0);
  const auto tips = generate({"gen", "broom", "--n", "30", "--sequence", "harmonic", "--format",
                              "curve"},
                             "t.json");
  const auto ex = invoke({"curve", "extract-sra", tips, "--alpha", "0.6", "--size", "10"});
  EXPECT_EQ(ex.code, 0);
  EXPECT_EQ(ex.report["verdict"], "success");
}

TEST_F(Cli, OutputFlagWritesFile) {
  std::ostringstream out;
  std::ostringstream err;
  const int code =
      metrik::cli::run({"beta", "--epsilon", "0.1", "--output", path("beta.json")}, out, err);
  EXPECT_EQ(code, 0);
  EXPECT_TRUE(out.str().empty());
  const auto doc = json::parse(metrik::io::read_file(path("beta.json")));
  EXPECT_NEAR(doc["beta"].get<double>(), 2.26739e-4, 1e-9);
}

TEST_F(Cli, StableNormAndDescend) {
  const auto sn = invoke({"stable-norm", "--generators", "1,0;1,1", "--g", "0,1"});
  EXPECT_EQ(sn.code, 0);
  EXPECT_EQ(sn.report["estimate"], 2.0);
  const auto d = invoke({"descend", "--objective", "quadratic", "--matrix", "2,0;0,1", "--dim",
                         "2", "--start", "1,1", "--iterations", "40"});
  EXPECT_EQ(d.code, 0);
  const auto bad = invoke({"descend", "--objective", "quadratic", "--matrix", "2,0;0,1", "--dim",
                           "2", "--start", "1,1", "--step", "0.9"});
  EXPECT_EQ(bad.code, 2);
}

}  // namespace
