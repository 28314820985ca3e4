#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "fgq/fgq.hpp"

using fgq::Json;

namespace {

struct RunResult {
  int exit = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream acc;
  acc << in.rdbuf();
  return acc.str();
}

RunResult runCli(const std::string& args) {
  static int counter = 0;
  const std::string stem = "/tmp/fgq_cli_test_" + std::to_string(counter++);
  const std::string outPath = stem + ".out", errPath = stem + ".err";
  const std::string cmd =
      std::string(FGQ_CLI_PATH) + " " + args + " >" + outPath + " 2>" + errPath;
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (status != -1 && WIFEXITED(status)) r.exit = WEXITSTATUS(status);
  r.out = slurp(outPath);
  r.err = slurp(errPath);
  std::remove(outPath.c_str());
  std::remove(errPath.c_str());
  return r;
}

std::string model(const std::string& name) {
  return std::string(FGQ_MODELS_DIR) + "/" + name;
}

long long multAt(const Json& terms, const Json& weight) {
  for (const auto& t : terms)
    if (t["weight"] == weight) return t["mult"].get<long long>();
  return 0;
}

}  // namespace

TEST_CASE("quantise", "[cli]") {
  const RunResult r = runCli("quantise --model " + model("su2_c2.json") + " --radius 8");
  REQUIRE(r.exit == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["model"]["tag"] == "su2_c2");
  const Json& terms = j["series"]["terms"];
  REQUIRE(terms.size() == 5);  // [0]..[4] lie in the window
  for (int k = 0; k <= 4; ++k) CHECK(multAt(terms, Json::array({k})) == 1);

  const RunResult coad = runCli("quantise --model " + model("coadjoint_a2.json"));
  REQUIRE(coad.exit == 0);
  const Json cj = Json::parse(coad.out);
  CHECK(multAt(cj["series"]["terms"], Json::array({1, 0})) == 1);
  CHECK(multAt(cj["series"]["terms"], Json::array({0, 1})) == 0);
  CHECK(multAt(cj["series"]["terms"], Json::array({0, 0})) == 0);
}

TEST_CASE("quantise refuses uncertified models", "[cli]") {
  const RunResult r = runCli("quantise --model " + model("t1_nocert.json"));
  CHECK(r.exit == 3);
  CHECK(r.err.find("PropernessUncertified") != std::string::npos);
}

TEST_CASE("induce", "[cli]") {
  const RunResult r = runCli("induce --model " + model("induced_su2.json") + " --radius 8");
  REQUIRE(r.exit == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["model"]["d"] == 2);
  CHECK(j["model"]["name"] == "sl2r");
  for (int k = 0; k <= 4; ++k)
    CHECK(multAt(j["series"]["terms"], Json::array({k})) == 1);

  const RunResult wrong = runCli("induce --model " + model("su2_c2.json"));
  CHECK(wrong.exit == 2);
}

TEST_CASE("shift", "[cli]") {
  const RunResult r = runCli("shift --model " + model("su2_c2.json") + " --radius 8");
  REQUIRE(r.exit == 0);
  const Json j = Json::parse(r.out);
  for (int k = 0; k <= 4; ++k)
    CHECK(multAt(j["series"]["terms"], Json::array({k})) == 1);

  CHECK(runCli("shift --model " + model("induced_su2.json")).exit == 2);
}

TEST_CASE("branch and tensor requests", "[cli]") {
  const RunResult br = runCli("branch --model " + model("branch_a1_t1.json"));
  REQUIRE(br.exit == 0);
  const Json bj = Json::parse(br.out);
  REQUIRE(bj["terms"].size() == 3);
  for (int w : {-2, 0, 2}) CHECK(multAt(bj["terms"], Json::array({w})) == 1);

  const RunResult tn = runCli("tensor --model " + model("tensor_a1.json"));
  REQUIRE(tn.exit == 0);
  const Json tj = Json::parse(tn.out);
  REQUIRE(tj["terms"].size() == 2);
  CHECK(multAt(tj["terms"], Json::array({0})) == 1);
  CHECK(multAt(tj["terms"], Json::array({2})) == 1);

  CHECK(runCli("branch --model " + model("tensor_a1.json")).exit == 2);
}

TEST_CASE("verify passes on the shipped models", "[cli]") {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"restr-cpt", "t2_identity.json"}, {"mult", "pair_t1_t2.json"},
      {"mult", "pair_su2_t1.json"},      {"mult", "pair_induced.json"},
      {"module", "su2_c2.json"},         {"qr-induced", "induced_su2.json"},
      {"qr-induced", "induced_coadjoint.json"}, {"shift", "t1_11.json"},
      {"dres-sign", "induced_su2.json"},
  };
  for (const auto& [check, file] : cases) {
    INFO(check << " on " << file);
    const RunResult r = runCli("verify --check " + check + " --model " + model(file));
    REQUIRE(r.exit == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["check"] == check);
    CHECK(j["pass"] == true);
    CHECK(!j["witnessedWindow"].empty());
  }
}

TEST_CASE("verify surfaces missing witnesses", "[cli]") {
  const RunResult r = runCli("verify --check restr-cpt --model " + model("su2_c2.json"));
  CHECK(r.exit == 3);
  CHECK(r.err.find("MissingWitness") != std::string::npos);
}

TEST_CASE("cli exit codes", "[cli]") {
  // unknown checks are rejected before the model file is touched
  CHECK(runCli("verify --check bogus --model /nonexistent.json").exit == 4);
  CHECK(runCli("quantise --model /nonexistent.json").exit == 2);
  CHECK(runCli("quantise --model " + model("su2_c2.json") + " --radius abc").exit == 2);
  CHECK(runCli("quantise --model " + model("su2_c2.json") + " --radius -1").exit == 2);
  CHECK(runCli("").exit == 2);
  CHECK(runCli("quantise").exit == 2);
  CHECK(runCli("frobnicate --model x").exit == 2);
}

TEST_CASE("output is byte-identical across runs", "[cli]") {
  const std::vector<std::string> commands = {
      "quantise --model " + model("su2_c2.json") + " --radius 8",
      "induce --model " + model("induced_su2.json") + " --radius 8",
      "verify --check mult --model " + model("pair_t1_t2.json"),
  };
  for (const std::string& cmd : commands) {
    INFO(cmd);
    const RunResult a = runCli(cmd);
    const RunResult b = runCli(cmd);
    REQUIRE(a.exit == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("--out writes the same bytes as stdout", "[cli]") {
  const std::string outFile = "/tmp/fgq_cli_out_file.json";
  const RunResult direct = runCli("quantise --model " + model("su2_c2.json") + " --radius 6");
  const RunResult redirected = runCli("quantise --model " + model("su2_c2.json") +
                                      " --radius 6 --out " + outFile);
  REQUIRE(direct.exit == 0);
  REQUIRE(redirected.exit == 0);
  CHECK(redirected.out.empty());
  CHECK(slurp(outFile) == direct.out);
  std::remove(outFile.c_str());
}
