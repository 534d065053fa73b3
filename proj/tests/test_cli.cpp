// Drives the installed binary end to end through a scratch directory.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() /
          ("crcs_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args) {
  std::string cmd = std::string(CRCS_CLI_PATH) + " " + args + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

}  // namespace

TEST_CASE("cli lifecycle on the example network") {
  Scratch tmp;
  {
    std::ofstream edges(tmp.path("fig.edges"));
    edges << crcs::test::example_edge_list();
  }

  REQUIRE(run("ingest --input " + tmp.path("fig.edges") +
              " --snapshots 3 --weight-mode given --normalize none --out " +
              tmp.path("net.bin")) == 0);
  REQUIRE(run("build-index --net " + tmp.path("net.bin") + " --out " +
              tmp.path("idx.bin")) == 0);

  SUBCASE("query-wcf reproduces the worked example") {
    REQUIRE(run("query-wcf --net " + tmp.path("net.bin") + " --index " +
                tmp.path("idx.bin") +
                " --q v0 --k 3 --theta 0.4 --window 0:2 --alpha 1 --out " +
                tmp.path("wcf.json")) == 0);
    json result = read_json(tmp.path("wcf.json"));
    CHECK(result["found"] == true);
    CHECK(result["community"]["vertices"] ==
          json::array({"v0", "v2", "v3", "v4"}));
    CHECK(result["community"]["interval"] == json::array({0, 1}));
  }

  SUBCASE("both engines report the same score") {
    REQUIRE(run("query-eef --net " + tmp.path("net.bin") +
                " --q v0 --k 2 --theta 0.5 --window 0:2 --alpha 2 --out " +
                tmp.path("eef.json")) == 0);
    REQUIRE(run("query-wcf --net " + tmp.path("net.bin") + " --index " +
                tmp.path("idx.bin") +
                " --q v0 --k 2 --theta 0.5 --window 0:2 --alpha 2 --out " +
                tmp.path("wcf.json")) == 0);
    json eef = read_json(tmp.path("eef.json"));
    json wcf = read_json(tmp.path("wcf.json"));
    CHECK(eef["community"]["score"].get<double>() ==
          doctest::Approx(wcf["community"]["score"].get<double>()));
    CHECK(eef["community"]["vertices"] == wcf["community"]["vertices"]);
  }

  SUBCASE("percent k resolves against the window max core") {
    REQUIRE(run("query-wcf --net " + tmp.path("net.bin") + " --index " +
                tmp.path("idx.bin") +
                " --q v0 --k 100% --theta 0.4 --window 0:2 --alpha 1 --out " +
                tmp.path("pct.json")) == 0);
    json result = read_json(tmp.path("pct.json"));
    CHECK(result["params"]["k"] == 3);
  }

  SUBCASE("alpha sweep emits one entry per alpha") {
    REQUIRE(run("alpha-sweep --net " + tmp.path("net.bin") + " --index " +
                tmp.path("idx.bin") +
                " --q v0 --k 2 --theta 0.5 --window 0:2 --alphas 0,1,4 --out " +
                tmp.path("sweep.json")) == 0);
    json sweep = read_json(tmp.path("sweep.json"));
    REQUIRE(sweep["results"].size() == 3);
    CHECK(sweep["results"][0]["community"]["size"] == 5);
    CHECK(sweep["results"][2]["community"]["size"] == 4);
  }

  SUBCASE("metrics consumes a query result") {
    REQUIRE(run("query-wcf --net " + tmp.path("net.bin") + " --index " +
                tmp.path("idx.bin") +
                " --q v0 --k 3 --theta 0.4 --window 0:2 --alpha 1 --out " +
                tmp.path("wcf.json")) == 0);
    REQUIRE(run("metrics --net " + tmp.path("net.bin") + " --community " +
                tmp.path("wcf.json") + " --out " + tmp.path("quality.json")) == 0);
    json quality = read_json(tmp.path("quality.json"));
    CHECK(quality["asd"].get<double>() == doctest::Approx(1.0));
    CHECK(quality["ass"].get<double>() == doctest::Approx(4.0));
  }

  SUBCASE("maintain applies a delta and updates both artifacts") {
    {
      std::ofstream delta(tmp.path("delta.txt"));
      delta << "I v3 v5 0.3\n";
    }
    REQUIRE(run("maintain --net " + tmp.path("net.bin") + " --index " +
                tmp.path("idx.bin") + " --snapshot 0 --delta " +
                tmp.path("delta.txt") + " --out-net " + tmp.path("net2.bin") +
                " --out-index " + tmp.path("idx2.bin")) == 0);
    // The updated snapshot now answers k=2 theta=0.3 queries from v5.
    REQUIRE(run("query-wcf --net " + tmp.path("net2.bin") + " --index " +
                tmp.path("idx2.bin") +
                " --q v5 --k 2 --theta 0.3 --window 0:0 --alpha 1 --out " +
                tmp.path("v5.json")) == 0);
    json result = read_json(tmp.path("v5.json"));
    CHECK(result["found"] == true);
  }

  SUBCASE("compress round trip preserves query answers") {
    REQUIRE(run("compress --index " + tmp.path("idx.bin") + " --out " +
                tmp.path("packed.bin")) == 0);
    REQUIRE(run("query-wcf --net " + tmp.path("net.bin") + " --index " +
                tmp.path("packed.bin") +
                " --q v0 --k 2 --theta 0.5 --window 0:2 --alpha 1 --out " +
                tmp.path("packed.json")) == 0);
    json result = read_json(tmp.path("packed.json"));
    CHECK(result["community"]["vertices"] ==
          json::array({"v0", "v2", "v3", "v4"}));
  }

  SUBCASE("bench is deterministic under a fixed seed") {
    std::string base = "bench --net " + tmp.path("net.bin") + " --index " +
                       tmp.path("idx.bin") +
                       " --queries 8 --seed 11 --window-len 3 --format json";
    REQUIRE(run(base + " --out " + tmp.path("b1.json")) == 0);
    REQUIRE(run(base + " --out " + tmp.path("b2.json")) == 0);
    json b1 = read_json(tmp.path("b1.json"));
    json b2 = read_json(tmp.path("b2.json"));
    REQUIRE(b1["rows"].size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(b1["rows"][i]["q"] == b2["rows"][i]["q"]);
      CHECK(b1["rows"][i]["score"] == b2["rows"][i]["score"]);
    }
  }

  SUBCASE("errors exit nonzero") {
    CHECK(run("query-wcf --net " + tmp.path("net.bin") + " --index " +
              tmp.path("idx.bin") +
              " --q nosuch --k 2 --theta 0.5 --window 0:2") != 0);
    CHECK(run("query-eef --net " + tmp.path("missing.bin") +
              " --q v0 --k 2 --theta 0.5 --window 0:2") != 0);
    CHECK(run("query-eef --net " + tmp.path("net.bin") +
              " --q v0 --k 2 --theta 0.5 --window 0:9") != 0);
    CHECK(run("nonsense") != 0);
  }
}

TEST_CASE("cli oracle-check runs a small suite") {
  CHECK(run("oracle-check --trials 6 --seed 3") == 0);
}
