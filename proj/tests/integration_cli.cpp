// Drives the dirlap executable.

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dirlap/generators.hpp"
#include "dirlap/io.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {
fs::path dir() {
  auto d = fs::temp_directory_path() / "dirlap_cli_test";
  fs::create_directories(d);
  return d;
}

int run(const std::string& args) {
  std::string cmd = std::string(DIRLAP_CLI_PATH) + " " + args + " >" + (dir() / "stdout.txt").string() + " 2>" +
                    (dir() / "stderr.txt").string();
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

json load(const fs::path& p) {
  std::ifstream f(p);
  return json::parse(f);
}

std::string p(const std::string& name) { return (dir() / name).string(); }
}  // namespace

TEST_CASE("generate, solve with check") {
  REQUIRE(run("generate random-eulerian -n 50 --seed 4 -o " + p("g.el")) == 0);
  REQUIRE(run("solve -i " + p("g.el") + " --b-random 7 --eps 1e-6 --check -o " + p("x.txt") + " -r " + p("s.json")) == 0);
  auto j = load(p("s.json"));
  CHECK(j["measured"]["relative_error"].get<double>() <= 1e-6);
  CHECK(j["measured"]["norm"].get<std::string>().find("U_L") != std::string::npos);
  CHECK(j["applications"]["matvecs"].get<long>() > 0);
  auto x = dirlap::read_vector_file(p("x.txt"));
  CHECK(x.size() == 50);
}

TEST_CASE("reports are reproducible modulo timings") {
  REQUIRE(run("generate torus -n 36 -o " + p("t.el")) == 0);
  REQUIRE(run("solve -i " + p("t.el") + " --b-random 3 --eps 1e-5 -r " + p("a.json")) == 0);
  REQUIRE(run("solve -i " + p("t.el") + " --b-random 3 --eps 1e-5 -r " + p("b.json")) == 0);
  auto a = load(p("a.json")), b = load(p("b.json"));
  a.erase("timings");
  b.erase("timings");
  CHECK(a == b);
  REQUIRE(run("rcdd -i " + p("t.el") + " -o " + p("s1.txt") + " -r " + p("r1.json")) == 0);
  REQUIRE(run("rcdd -i " + p("t.el") + " -o " + p("s2.txt") + " -r " + p("r2.json")) == 0);
  auto r1 = load(p("r1.json")), r2 = load(p("r2.json"));
  r1.erase("timings");
  r2.erase("timings");
  r2["output"] = r1["output"];
  CHECK(r1 == r2);
  CHECK(r1["verified_quarter"].get<bool>());
}

TEST_CASE("graph round trip through generate is bitwise") {
  REQUIRE(run("generate de-bruijn -n 32 -o " + p("d.el")) == 0);
  auto g = dirlap::read_edge_list_file(p("d.el"));
  CHECK(g == dirlap::de_bruijn(32));
}

TEST_CASE("exit codes") {
  CHECK(run("solve -i " + p("missing.el")) == 1);
  CHECK(run("generate cycle -n 1") == 1);
  CHECK(run("frobnicate") == 1);
  std::ofstream(p("path.el")) << "0 1 1\n1 2 1\n";
  CHECK(run("solve -i " + p("path.el")) == 1);
  REQUIRE(run("generate cycle -n 12 -o " + p("c.el")) == 0);
  CHECK(run("solve -i " + p("c.el") + " --max-matvecs 10") == 2);
  CHECK(run("check cycle5") == 0);
}

TEST_CASE("remaining subcommands produce reports") {
  REQUIRE(run("generate random-eulerian -n 30 --seed 2 -o " + p("r.el")) == 0);
  REQUIRE(run("sparsify --directed -i " + p("r.el") + " -o " + p("rd.el") + " --check -r " + p("sd.json")) == 0);
  auto sd = load(p("sd.json"));
  CHECK(sd["measured"]["degrees_exact"].get<bool>());
  CHECK(sd["measured"]["precond_quality"].get<double>() <= 0.5);
  REQUIRE(run("sparsify --undirected -i " + p("r.el") + " -o " + p("ru.el") + " --check -r " + p("su.json")) == 0);
  CHECK(load(p("su.json"))["measured"]["sandwich_hi"].get<double>() <= 1.0 + 1e-9);
  REQUIRE(run("square -i " + p("r.el") + " --eps 0.25 -o " + p("sq.el") + " --check -r " + p("sq.json")) == 0);
  CHECK(load(p("sq.json"))["measured"]["approx_error"].get<double>() <= 0.25);
  REQUIRE(run("decompose -i " + p("r.el") + " -r " + p("de.json")) == 0);
  CHECK(load(p("de.json"))["parts"].size() >= 1);
  REQUIRE(run("chain -i " + p("r.el") + " --check -r " + p("ch.json")) == 0);
  auto ch = load(p("ch.json"));
  CHECK(ch["levels"][0]["lambda_star"].back().get<double>() >= 0.25);
  auto cyc = (run("check cycle5 -r " + p("c5.json")), load(p("c5.json")));
  CHECK(cyc["reproduced"].get<bool>());
}
