#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "erg/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("erg-cli-test-" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p.parent_path());
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(ERG_LAB_EXE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

fs::path write_config(const std::string& name, const json& j) {
  const fs::path p = scratch(name + ".json");
  std::ofstream(p) << j.dump();
  return p;
}

}  // namespace

TEST_CASE("help, version and usage errors") {
  CHECK(run("--help") == 0);
  CHECK(run("--version") == 0);
  CHECK(run("") == 2);
  CHECK(run("graph --t 100 --bogus") == 2);
  CHECK(run("nosuchcommand") == 2);
  CHECK(run("graph --family pacman --theta 1 --d 3 --t 100 --out " + scratch("p3").string()) == 2);
  CHECK(run("graph --family beta-skeleton --t 100 --out " + scratch("nobeta").string()) == 2);
  CHECK(run("graph --family gabriel --t 1 --out " + scratch("lowt").string()) == 2);
  CHECK(run("graph --t 100 --window 0,0,1 --out " + scratch("win").string()) == 2);
  CHECK(run("gumbel-sweep --t 100 --replications 0 --out " + scratch("r0").string()) == 2);
  CHECK(run("verify --config /nonexistent/config.json") == 2);
}

TEST_CASE("config file validation") {
  const fs::path empty_t = write_config("empty_t", {{"family", "gabriel"}, {"t_values", json::array()}});
  CHECK(run("gumbel-sweep --config " + empty_t.string() + " --out " + scratch("e").string()) == 2);
  const fs::path unknown = write_config("unknown", {{"family", "gabriel"}, {"colour", "red"}});
  CHECK(run("graph --config " + unknown.string()) == 2);
  const fs::path bad_type = write_config("bad_type", {{"family", "gabriel"}, {"replications", "many"}});
  CHECK(run("gumbel-sweep --config " + bad_type.string()) == 2);
}

TEST_CASE("graph output is deterministic") {
  const fs::path a = scratch("ga"), b = scratch("gb"), c = scratch("gc");
  REQUIRE(run("graph --family rng --t 200 --seed 7 --out " + a.string()) == 0);
  REQUIRE(run("graph --family rng --t 200 --seed 7 --threads 2 --out " + b.string()) == 0);
  REQUIRE(run("graph --family rng --t 200 --seed 8 --out " + c.string()) == 0);
  CHECK(slurp(a / "edges.csv") == slurp(b / "edges.csv"));
  CHECK(slurp(a / "points.csv") == slurp(b / "points.csv"));
  CHECK(slurp(a / "points.csv") != slurp(c / "points.csv"));
  CHECK(first_line(a / "points.csv") == "x0,x1");
  CHECK(first_line(a / "edges.csv") == "i,j,length,mid_0,mid_1,dir_0,dir_1");
  const json meta = read_json(a / "graph.json");
  CHECK(meta["seed"] == 7);
  CHECK(meta["family"]["kind"] == "relative-neighbourhood");
  const json manifest = read_json(a / "manifest.json");
  CHECK(manifest["software"] == erg::kSoftwareName);
  CHECK(manifest["version"] == erg::kSoftwareVersion);
  CHECK(manifest["command"] == "graph");
  CHECK_FALSE(manifest["config"].contains("threads"));
  // naive and grid builders agree through the tool as well
  const fs::path n = scratch("gn");
  REQUIRE(run("graph --family rng --t 200 --seed 7 --naive --out " + n.string()) == 0);
  CHECK(slurp(a / "edges.csv") == slurp(n / "edges.csv"));
}

TEST_CASE("gumbel-sweep files") {
  const fs::path o = scratch("sweep");
  REQUIRE(run("gumbel-sweep --family gabriel --t-values 100,200 --replications 20 --seed 3 --out " + o.string()) == 0);
  CHECK(first_line(o / "sweep.csv") == "t,ks,ks_stderr,rate_shape,n_rep");
  CHECK(first_line(o / "samples_t100.csv") == "rep,seed,L,s,count_b0,count_b1,count_b2");
  CHECK(fs::exists(o / "samples_t200.csv"));
  const json s = read_json(o / "summary.json");
  CHECK(s["per_t"].size() == 2);
  CHECK(s["per_t"][0]["n_rep"] == 20);
  CHECK(s["failed"] == false);

  // one replication: a single step function is at least 1/2 away from any continuous law
  const fs::path one = scratch("one");
  REQUIRE(run("gumbel-sweep --family gabriel --t 100 --replications 1 --out " + one.string()) == 0);
  CHECK(read_json(one / "summary.json")["per_t"][0]["ks"].get<double>() >= 0.5);
}

TEST_CASE("process-test files") {
  const fs::path o = scratch("proc");
  REQUIRE(run("process-test --family gabriel --t 300 --b 0 --replications 10 --out " + o.string()) == 0);
  CHECK(first_line(o / "cell_counts_t300.csv") == "rep,seed,cell_0,cell_1,cell_2,cell_3");
  CHECK(first_line(o / "marks_t300.csv") == "rep,s,mid_0,mid_1,dir_0,dir_1");
  const json p = read_json(o / "process.json");
  const json& e = p["per_t"][0];
  CHECK(e["cells"].size() == 4);
  CHECK(e["intensity_branch"] == "exponential");
  CHECK(e["cells"][0]["theoretical_mean"].get<double>() == doctest::Approx(0.25));
}

TEST_CASE("verify exit codes") {
  const std::string small = " --trials 8 --mc-n 4000 --out ";
  CHECK(run("verify --family gabriel" + small + scratch("v0").string()) == 0);
  const fs::path bad = scratch("v1");
  CHECK(run("verify --family gabriel --gamma-factor 1.1" + small + bad.string()) == 1);
  const json report = read_json(bad / "verify.json");
  CHECK(report.dump().find("\"passed\":false") != std::string::npos);
  CHECK(run("verify --family gabriel --gamma-factor 1.1 --report-only" + small + scratch("v2").string()) == 0);
}

TEST_CASE("constants command") {
  const fs::path o = scratch("const");
  REQUIRE(run("constants --family gabriel --trials 8 --mc-n 4000 --out " + o.string()) == 0);
  const json j = read_json(o / "constants.json");
  CHECK(j.contains("rates"));
}
