#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "minplus/io.hpp"
#include "minplus/traffic.hpp"
#include "minplus/workbench.hpp"

using namespace minplus;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path temp_dir(const std::string& tag) {
  const auto dir = fs::temp_directory_path() / ("minplus-test-" + tag);
  fs::remove_all(dir);
  return dir;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  const auto p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("cmd_eigen") {
  SUBCASE("two-node matrix") {
    const auto file = write_temp("eigen-ok.txt", "inf 3\n1 inf\n");
    std::ostringstream out;
    CHECK(cmd_eigen(file.string(), out) == kOk);
    CHECK(out.str().find("lambda 2") != std::string::npos);
    CHECK(out.str().find("cycle 1 2") != std::string::npos);
  }
  SUBCASE("1x1") {
    const auto file = write_temp("eigen-self.txt", "5\n");
    std::ostringstream out;
    CHECK(cmd_eigen(file.string(), out) == kOk);
    CHECK(out.str().find("lambda 5") != std::string::npos);
  }
  SUBCASE("parse failure exits 2") {
    const auto file = write_temp("eigen-bad.txt", "inf pancake\n1 inf\n");
    std::ostringstream out;
    CHECK(cmd_eigen(file.string(), out) == kParseError);
  }
  SUBCASE("disconnected matrix exits 3 with the node pair") {
    const auto file = write_temp("eigen-disc.txt", "inf 3\ninf 1\n");
    std::ostringstream out;
    CHECK(cmd_eigen(file.string(), out) == kStructureError);
    CHECK(out.str().find("node") != std::string::npos);
  }
}

TEST_CASE("cmd_diagram replay determinism") {
  RunConfig cfg;
  cfg.subcommand = "diagram";
  cfg.n = 2;
  cfg.m = 10;
  cfg.density_grid = uniform_grid(0.0, 1.0, 9);
  cfg.horizon = 2400;
  cfg.burn_in = 240;
  cfg.seed = 99;
  cfg.placement = "random";
  cfg.svg = true;

  const auto dir1 = temp_dir("diag1");
  const auto dir2 = temp_dir("diag2");
  std::ostringstream out;
  cfg.out_dir = dir1.string();
  REQUIRE(cmd_diagram(cfg, out) == kOk);
  cfg.out_dir = dir2.string();
  REQUIRE(cmd_diagram(cfg, out) == kOk);

  CHECK(fs::exists(dir1 / "config.json"));
  CHECK(fs::exists(dir1 / "diagram.csv"));
  CHECK(fs::exists(dir1 / "diagram.svg"));
  CHECK(fs::exists(dir1 / "run.log"));
  const std::string csv1 = slurp(dir1 / "diagram.csv");
  const std::string csv2 = slurp(dir2 / "diagram.csv");
  CHECK(csv1 == csv2);
  CHECK(csv1.find("d,lambda_exact,lambda_approx,chi_sim,phase,n,m,seed,K0,K") == 0);

  SUBCASE("config snapshot replays") {
    const auto replayed = RunConfig::from_json(slurp(dir1 / "config.json"));
    const auto dir3 = temp_dir("diag3");
    RunConfig cfg3 = replayed;
    cfg3.out_dir = dir3.string();
    REQUIRE(cmd_diagram(cfg3, out) == kOk);
    CHECK(slurp(dir3 / "diagram.csv") == csv1);
  }
}

TEST_CASE("cmd_diagram single-density grids") {
  for (double d : {0.0, 1.0}) {
    RunConfig cfg;
    cfg.subcommand = "diagram";
    cfg.density_grid = {d};
    cfg.horizon = 2400;
    cfg.burn_in = 240;
    cfg.out_dir = temp_dir("diag-single").string();
    std::ostringstream out;
    REQUIRE(cmd_diagram(cfg, out) == kOk);
    const std::string csv = slurp(fs::path(cfg.out_dir) / "diagram.csv");
    std::istringstream lines(csv);
    std::string header, row;
    std::getline(lines, header);
    REQUIRE(std::getline(lines, row));
    // lambda and chi are both zero at the empty and the frozen extremes
    CHECK(row.find(d == 0.0 ? "0,0,0,0,free" : "1,0,0,0,freeze") == 0);
  }
}

TEST_CASE("cmd_verify") {
  RunConfig cfg;
  cfg.subcommand = "verify";
  cfg.n = 3;
  cfg.m = 9;
  cfg.density_grid = uniform_grid(0.0, 1.0, 21);
  cfg.seed = 5;
  std::ostringstream out;
  CHECK(cmd_verify(cfg, out) == kOk);
  CHECK(out.str().find("PASS") != std::string::npos);
}

TEST_CASE("cmd_simulate") {
  SUBCASE("event-graph road trajectory") {
    RoadConfig road;
    road.occupancy = {1, 0, 1, 0};
    const auto file = write_temp("road.json", net_to_json(road_event_graph_net(road)));
    RunConfig cfg;
    cfg.subcommand = "simulate";
    cfg.model = file.string();
    cfg.horizon = 100;
    cfg.out_dir = temp_dir("sim").string();
    std::ostringstream out;
    CHECK(cmd_simulate(cfg, out) == kOk);
    const std::string csv = slurp(fs::path(cfg.out_dir) / "trajectory.csv");
    CHECK(csv.find("k,q1,q2,q3,q4,flow") == 0);
  }
  SUBCASE("nondeterministic net exits 4") {
    // A place without a downstream transition (the JSON spells exactly
    // one consumer per place, so this is how indeterminism shows up).
    const std::string raw = R"({
      "transitions": ["q1", "q2"],
      "places": [{"id": "src", "marking": 1.0, "downstream": "q1"},
                 {"id": "loose", "marking": 0.5}],
      "production": [{"transition": "q1", "place": "src", "multiplicity": 1.0},
                     {"transition": "q1", "place": "loose", "multiplicity": 1.0}]
    })";
    const auto file = write_temp("conflict.json", raw);
    RunConfig cfg;
    cfg.subcommand = "simulate";
    cfg.model = file.string();
    cfg.out_dir = temp_dir("sim-bad").string();
    std::ostringstream out;
    CHECK(cmd_simulate(cfg, out) == kNondeterministic);
  }
}

TEST_CASE("cmd_tent") {
  RunConfig cfg;
  cfg.subcommand = "tent";
  cfg.mode = "exact";
  std::ostringstream out;
  CHECK(cmd_tent(cfg, out) == kOk);
  const std::string text = out.str();
  CHECK(text.find("fixed points: 0 (unstable) 0.666666666667 (unstable)") !=
        std::string::npos);
  CHECK(text.find("growth rate 3/5") != std::string::npos);

  SUBCASE("monte carlo mode") {
    RunConfig mc = cfg;
    mc.mode = "mc";
    mc.seed = 20240817;
    mc.horizon = 100000;
    std::ostringstream mcout;
    CHECK(cmd_tent(mc, mcout) == kOk);
    CHECK(mcout.str().find("monte carlo chi") != std::string::npos);
  }
}

TEST_CASE("cmd_compose") {
  const std::string sys_text =
      "states: p\ninputs: p\noutputs: p\nA:\ninf\nB:\n0.5\nC:\n0\n";
  const auto f1 = write_temp("s1.sys", sys_text);
  const auto f2 = write_temp("s2.sys", sys_text);
  RunConfig cfg;
  cfg.subcommand = "compose";
  cfg.mode = "series";
  cfg.inputs = {f1.string(), f2.string()};
  std::ostringstream out;
  CHECK(cmd_compose(cfg, out) == kOk);
  CHECK(out.str().find("states: p p p") != std::string::npos);

  SUBCASE("feedback arity") {
    RunConfig fb = cfg;
    fb.mode = "feedback";
    fb.inputs = {f1.string()};
    std::ostringstream fbout;
    CHECK(cmd_compose(fb, fbout) == kOk);
  }
  SUBCASE("bad operator") {
    RunConfig bad = cfg;
    bad.mode = "sideways";
    std::ostringstream badout;
    CHECK(cmd_compose(bad, badout) == kParseError);
  }
}
