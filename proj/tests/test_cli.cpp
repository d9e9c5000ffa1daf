#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run(const std::string& args) {
  std::string cmd = std::string(HALLCALC_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& rel) { return std::string(HALL_SOURCE_DIR) + "/" + rel; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("hall-table command") {
  CmdResult r = run("hall-table --quiver " + data("quivers/a2.q") +
                    " --max-dim 2,2 --out /tmp/cli_a2.json");
  CHECK(r.exit_code == 0);
  std::string json = slurp("/tmp/cli_a2.json");
  CHECK(json.find("\"classes\"") != std::string::npos);
  CHECK(json.find("\"hall\"") != std::string::npos);

  // missing --out is a usage error
  CHECK(run("hall-table --quiver " + data("quivers/a2.q") + " --max-dim 2,2").exit_code == 2);

  // cyclic quiver is a computation failure, not a usage error
  spit("/tmp/cli_cycle.q", "vertices 3\narrow 1 2\narrow 2 3\narrow 3 1\n");
  CHECK(run("hall-table --quiver /tmp/cli_cycle.q --max-dim 1,1,1 --out /tmp/x.json").exit_code ==
        1);
}

TEST_CASE("serial flag produces the identical table") {
  run("hall-table --quiver " + data("quivers/a2.q") + " --max-dim 2,2 --out /tmp/cli_par.json");
  CmdResult r = run("hall-table --quiver " + data("quivers/a2.q") +
                    " --max-dim 2,2 --serial --out /tmp/cli_ser.json");
  CHECK(r.exit_code == 0);
  CHECK(slurp("/tmp/cli_par.json") == slurp("/tmp/cli_ser.json"));
}

TEST_CASE("mult command") {
  run("hall-table --quiver " + data("quivers/a2.q") + " --max-dim 2,2 --out /tmp/cli_a2.json");
  CmdResult r = run("mult --algebra SF --table /tmp/cli_a2.json --lhs \"s[[0,1]]\" --rhs "
                    "\"s[[1,0]]\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "s[[0,1],[1,0]] + (P^2-1)*s[[1,1]]\n");

  CmdResult cf = run("mult --algebra CF --table /tmp/cli_a2.json --lhs \"d[[0,1]]\" --rhs "
                     "\"d[[1,0]]\"");
  CHECK(cf.exit_code == 0);
  CHECK(cf.out == "d[[0,1],[1,0]] + d[[1,1]]\n");

  CmdResult b = run("mult --algebra B --chi \"1,-1;0,1\" --lhs \"b{[1,0]}\" --rhs \"b{[0,1]}\"");
  CHECK(b.exit_code == 0);
  CHECK(b.out == "b{[0,1],[1,0]}\n");
  CmdResult b2 =
      run("mult --algebra B --chi \"1,-1;0,1\" --mode sum --lhs \"b{[0,1]}\" --rhs \"b{[1,0]}\"");
  CHECK(b2.exit_code == 0);
  CHECK(b2.out == "b{[0,1],[1,0]} + b{[1,1]}\n");

  CmdResult a = run("mult --algebra A --chi \"1\" --lhs \"a[0]\" --rhs \"a[0]\"");
  CHECK(a.exit_code == 0);
  CHECK(a.out == "a[0]\n");

  // grammar errors are usage errors
  CHECK(run("mult --algebra CF --table /tmp/cli_a2.json --lhs \"d[[0,1]\" --rhs \"d[]\"")
            .exit_code == 2);
  // bound violations are computation failures
  CHECK(run("mult --algebra CF --table /tmp/cli_a2.json --lhs \"d[[1,1],[1,1]]\" --rhs "
            "\"d[[1,1],[1,1]]\"")
            .exit_code == 1);
}

TEST_CASE("verify command determinism and table checking") {
  CmdResult v1 = run("verify --suite cy --seed 5 --trials 5");
  CHECK(v1.exit_code == 0);
  CmdResult v2 = run("verify --suite cy --seed 5 --trials 5");
  CHECK(v1.out == v2.out);  // byte-identical standard output

  CHECK(run("verify --suite nosuchsuite").exit_code == 2);

  // cyclic quiver given to verify: diagnostic failure
  spit("/tmp/cli_cycle2.q", "vertices 3\narrow 1 2\narrow 2 3\narrow 3 1\n");
  CHECK(run("verify --suite qserre --quiver /tmp/cli_cycle2.q").exit_code == 1);

  // a table for the wrong quiver falls back to fixtures instead of crashing
  CmdResult cross = run("verify --suite serre --table /tmp/cli_a2.json");
  CHECK(cross.exit_code == 0);

  // corrupted table: flip a hall polynomial coefficient
  run("hall-table --quiver " + data("quivers/a2.q") + " --max-dim 2,2 --out /tmp/cli_a2.json");
  std::string json = slurp("/tmp/cli_a2.json");
  auto pos = json.find("\"hall\"");
  REQUIRE(pos != std::string::npos);
  pos = json.find("\"poly\": [", pos);
  REQUIRE(pos != std::string::npos);
  pos = json.find('[', pos);
  json.insert(pos + 1, "7,");  // corrupt the first hall polynomial
  spit("/tmp/cli_a2_bad.json", json);
  CmdResult bad = run("verify --suite assoc --table /tmp/cli_a2_bad.json --seed 1 --trials 2");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("\"status\":\"fail\"") != std::string::npos);
  CHECK(bad.out.find("riedtmann") != std::string::npos);

  // the intact table passes the same suite
  CmdResult good = run("verify --suite assoc --table /tmp/cli_a2.json --seed 1 --trials 2");
  CHECK(good.exit_code == 0);
}
