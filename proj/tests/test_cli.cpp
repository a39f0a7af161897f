#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "coresurf/folding.hpp"
#include "coresurf/serialize.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace coresurf;
using namespace testutil;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

const char* cli_path() {
  const char* p = std::getenv("CORESURF_CLI");
  REQUIRE_MESSAGE(p != nullptr, "CORESURF_CLI must point at the cli binary");
  return p;
}

RunResult run(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  REQUIRE(f.good());
  f << text;
}

}  // namespace

TEST_CASE("word subcommands") {
  CHECK(run("reduce abABc").out == "dcD\n");
  CHECK(run("reduce abABcdCD").out == "1\n");
  CHECK(run("trivial abABcdCD").out == "true\n");
  CHECK(run("trivial ab").out == "false\n");
  CHECK(run("equal ab ab").out == "true\n");
  CHECK(run("equal abABcdCDab ab").out == "true\n");
  CHECK(run("equal a b").out == "false\n");
  CHECK(run("conjugate bABa abAB").out == "true\n");
  CHECK(run("conjugate a b").out == "false\n");
}

TEST_CASE("higher genus goes through the token syntax") {
  auto r = run("reduce --genus 3 \"a1 b2 a3' b1'\"");
  CHECK(r.code == 0);
  CHECK(r.out == "a1 b2 a3' b1'\n");
  CHECK(run("trivial --genus 3 \"a1 b1 a1' b1' a2 b2 a2' b2' a3 b3 a3' b3'\"").out ==
        "true\n");
}

TEST_CASE("core subcommand emits the complex and a summary") {
  const std::string path = "/tmp/coresurf_cli_core.json";
  auto r = run("core --gens abAB --out " + path);
  CHECK(r.code == 0);
  CHECK(r.out == "v=7 e=8 f=1 chi=0 boundary=[4,4]\n");
  auto S = from_json(slurp(path));
  CHECK(validate(S).ok());
  CHECK(structure_violations(S).empty());

  CHECK(run("core --gens a,b").code == 0);
  auto rs = run("core --gens a,b --out /tmp/coresurf_cli_ab.json");
  CHECK(rs.out == "v=4 e=6 f=1 chi=-1 boundary=[4]\n");
}

TEST_CASE("fold order never changes the canonical output") {
  const std::string base = "/tmp/coresurf_cli_seed";
  auto r0 = run("core --gens abAABc,cd --out " + base + "0.json");
  auto r5 = run("core --gens abAABc,cd --seed 5 --out " + base + "5.json");
  auto r9 = run("core --gens abAABc,cd --seed 9 --out " + base + "9.json");
  CHECK(r0.code == 0);
  CHECK(r0.out == r5.out);
  CHECK(r0.out == r9.out);
  const std::string j0 = slurp(base + "0.json");
  CHECK(j0 == slurp(base + "5.json"));
  CHECK(j0 == slurp(base + "9.json"));
}

TEST_CASE("complex inspection subcommands") {
  const std::string core_path = "/tmp/coresurf_cli_core.json";
  run("core --gens abAB --out " + core_path);

  auto chk = run("check-core --in " + core_path);
  CHECK(chk.code == 0);
  CHECK(chk.out == "true\n");

  const std::string ring_path = "/tmp/coresurf_cli_ring.json";
  spit(ring_path, to_json(ring(W("abABcd"), g2())));
  auto bad = run("check-core --in " + ring_path);
  CHECK(bad.code == 0);
  CHECK(bad.out.substr(0, 6) == "false\n");
  CHECK(bad.out.size() > 6);  // at least one reason follows

  auto st = run("stats --in " + core_path);
  CHECK(st.out ==
        "v=7 e=8 f=1 chi=0 boundary=[4,4]\n"
        "component 0: v=7 e=8 f=1 chi=0 boundary_cycles=2 genus=0\n");

  auto dot = run("export-dot --in " + core_path);
  CHECK(dot.code == 0);
  CHECK(dot.out.find("digraph") != std::string::npos);
  size_t arrows = 0;
  for (size_t pos = 0; (pos = dot.out.find("->", pos)) != std::string::npos; ++pos) ++arrows;
  CHECK(arrows == 8);
}

TEST_CASE("membership subcommands") {
  CHECK(run("member --gens a,b abABab").out == "true\n");
  CHECK(run("member --gens a,b c").out == "false\n");
  CHECK(run("conj-into --gens abAB bABa").out == "true\n");
  CHECK(run("conj-into --gens abAB a").out == "false\n");
}

TEST_CASE("cover-ball subcommand") {
  auto r = run("cover-ball --radius 1");
  CHECK(r.code == 0);
  CHECK(r.out == "v=65 e=64 f=0 chi=1 boundary=[128]\n");

  auto raw = run("cover-ball --radius 2 --raw");
  CHECK(raw.code == 0);
  CHECK(raw.out == "v=457 e=456 f=0 chi=1 boundary=[912]\n");

  const std::string path = "/tmp/coresurf_cli_ball.json";
  auto rb = run("cover-ball --gens abAB --radius 2 --out " + path);
  CHECK(rb.code == 0);
  auto S = from_json(slurp(path));
  CHECK(validate(S).ok());
  CHECK(structure_violations(S).empty());
}

TEST_CASE("closure subcommand") {
  const std::string amb = "/tmp/coresurf_cli_amb.json";
  const std::string sub = "/tmp/coresurf_cli_sub.json";
  run("core --gens a,b --out " + amb);
  spit(sub, "{\"vertices\":[0,1,2,3],\"edges\":[0,1,2,3,4,5]}");
  auto r = run("closure --in " + amb + " --sub " + sub + " --mode br");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "completed=true steps=1 boundary=[12,4]\n"
        "v=4 e=6 f=1\n");
}

TEST_CASE("failures map to distinct exit codes") {
  CHECK(run("reduce").code == 2);            // missing argument
  CHECK(run("reduce abx").code == 2);        // unknown letter
  CHECK(run("reduce --genus 1 a1").code == 2);
  CHECK(run("stats --in /tmp/does_not_exist.json").code == 2);
  const std::string garbage = "/tmp/coresurf_cli_garbage.json";
  spit(garbage, "not json at all");
  CHECK(run("check-core --in " + garbage).code == 2);
  CHECK(run("conjugate abAABc a --budget-geodesic 1").code == 3);
}
