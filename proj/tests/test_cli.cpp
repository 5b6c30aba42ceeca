#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "ctxrt/behavior.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(CTXRT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ctxrt_cli_" + std::to_string(getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string make(const std::string& args, const std::string& name) {
    auto r = run(args + " -o " + path(name));
    EXPECT_EQ(r.code, 0) << args;
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, Bounds) {
  auto r = run("bounds --n-min 4 --n-max 6");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "n,classical,quantum,algebraic_max\n"
            "4,2,2.828427,4\n"
            "5,3,3.944272,5\n"
            "6,4,5.196152,6\n");
  auto precise = run("bounds --n-min 5 --n-max 5 --precision 14");
  EXPECT_EQ(precise.out, "n,classical,quantum,algebraic_max\n5,3,3.9442719099992,5\n");
}

TEST_F(Cli, ConvertAndCheck) {
  auto pr = make("behavior make pr --n 4", "pr.json");
  auto npr = make("behavior make npr --n 4", "npr.json");
  auto conv = run("convert " + pr + " " + npr);
  ASSERT_EQ(conv.code, 0);
  EXPECT_EQ(nlohmann::json::parse(conv.out).at("verdict"), "convertible");
  EXPECT_EQ(run("convert " + npr + " " + pr).code, 1);
  auto nc = run("check nc " + pr);
  EXPECT_EQ(nc.code, 1);
  EXPECT_EQ(nlohmann::json::parse(nc.out).at("verdict"), "contextual");
  EXPECT_EQ(run("check nc " + npr).code, 0);
  EXPECT_EQ(run("check nd " + pr).code, 0);
  auto cls = run("classify " + pr + " " + npr);
  EXPECT_EQ(nlohmann::json::parse(cls.out).at("relation"), "strictly_above");
}

TEST_F(Cli, MonotonesAndOmega) {
  auto b = make("behavior make b --n 4 --alpha 1 --gamma 3/4", "b.json");
  EXPECT_EQ(nlohmann::json::parse(run("monotone momega " + b).out).at("value"), "5/2");
  EXPECT_EQ(nlohmann::json::parse(run("monotone mnpr " + b).out).at("value"), "4");
  auto om = nlohmann::json::parse(run("omega " + b + " --all").out);
  EXPECT_EQ(om.at("values").size(), 8u);
  EXPECT_EQ(om.at("violated").at("value"), "5/2");
}

TEST_F(Cli, Wirings) {
  auto j = nlohmann::json::parse(run("wirings enumerate --n 5 --count-only").out);
  EXPECT_EQ(j.at("homomorphisms"), 10);
  EXPECT_EQ(j.at("raw_count"), 10240);
  EXPECT_FALSE(j.contains("wirings"));
  auto s = nlohmann::json::parse(run("wirings symmetries --n 4").out);
  EXPECT_EQ(s.at("count"), 128);
  EXPECT_EQ(s.at("wirings").size(), 128u);
}

TEST_F(Cli, PreorderDemo) {
  auto r = run("preorder demo --property infinite_height --n 4 --grid 0,1/2,1 --seed 3");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("property"), "infinite_height");
  EXPECT_EQ(j.at("seed"), 3);
  EXPECT_TRUE(j.at("certified").get<bool>());
  EXPECT_EQ(run("preorder demo --property infinite_width --n 4 --grid 3/4,1").code, 2);
}

TEST_F(Cli, Embed) {
  auto pr = make("behavior make pr --n 4", "pr.json");
  {
    std::ofstream s(path("pendant.json"));
    s << R"({"measurements":["X0","X1","X2","X3","Y"],"contexts":[[0,1],[1,2],[2,3],[3,0],[0,4]],"outcomes":["+1","-1"]})";
  }
  auto r = run("embed " + pr + " " + path("pendant.json") + " --cycle 0,1,2,3 -o " + path("e.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(run("check nc " + path("e.json")).code, 1);
  EXPECT_EQ(run("embed " + pr + " " + path("pendant.json") + " --cycle 0,1,3,2").code, 2);
}

TEST_F(Cli, DeterministicOutputAndReparse) {
  auto a = run("behavior make f --n 5 --k 3 --alpha 2/7");
  auto b = run("behavior make f --n 5 --k 3 --alpha 2/7");
  EXPECT_EQ(a.out, b.out);
  auto beh = ctxrt::behavior_from_json(nlohmann::json::parse(a.out));
  EXPECT_TRUE(ctxrt::validate(beh).ok);
  auto sc = run("scenario cycle --n 4");
  EXPECT_EQ(sc.code, 0);
  EXPECT_EQ(nlohmann::json::parse(sc.out).at("contexts").size(), 4u);
}

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(run("check nc " + path("missing.json")).code, 2);
  {
    std::ofstream s(path("broken.json"));
    s << "{ not json";
  }
  EXPECT_EQ(run("monotone momega " + path("broken.json")).code, 2);
  {
    std::ofstream s(path("schema.json"));
    s << R"({"scenario": {"measurements": ["A"], "contexts": [[0]], "outcomes": ["+1","-1"]}, "tables": {"0": {"+1": "3/2"}}})";
  }
  EXPECT_EQ(run("check nd " + path("schema.json")).code, 2);
  EXPECT_EQ(run("behavior make f --n 4 --alpha banana").code, 2);
  EXPECT_EQ(run("bounds --n-min 4").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("wirings enumerate --n 4 --unknown").code, 2);
}
