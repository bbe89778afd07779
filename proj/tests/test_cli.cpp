// Black-box tests of the command line front end: exit code contract,
// byte-determinism of the JSON certificates, dump round-trips, and the size
// cap environment handling. The binary path arrives in CARVE_BIN.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "weylcarve/repspace.hpp"

using njson = nlohmann::ordered_json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string binary() {
  const char* env = std::getenv("CARVE_BIN");
  REQUIRE(env != nullptr);
  return env;
}

RunResult run_cmd(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = binary() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  RunResult r;
  r.out = std::move(out);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("unitary: passing report with the documented schema") {
  RunResult r = run_cmd("unitary --g 2 --weight '1,1;2' --p 7 --disc 1");
  REQUIRE(r.code == 0);
  njson j = njson::parse(r.out);
  CHECK(j["weight"] == "1,1;2");
  CHECK(j["dual_weight"] == "-1,-1;2");
  CHECK(j["s"] == 2);
  CHECK(j["p"] == 7);
  CHECK(j["flags"]["p_gt_2g"] == true);
  CHECK(j["flags"]["s_lt_p"] == true);
  CHECK(j["flags"]["p_small"] == true);
  CHECK(j["flags"]["p_small_dual"] == true);
  CHECK(j["chosen"]["m"] == 3);
  CHECK(j["chosen"]["bezout"]["c"] == "80");
  CHECK(j["dims"]["image"] == 2);
  CHECK(j["dims"]["expected"] == 2);
  CHECK(j["min_p_valuation"] == 0);
  CHECK(j["galois_fixed_dim"] == 2);
  CHECK(j["t"] == 2);
  CHECK(j["pass"] == true);
}

TEST_CASE("unitary: byte-identical JSON across repeated runs") {
  const std::string args = "unitary --g 2 --weight '2,0;2' --p 7 --disc 3";
  RunResult a = run_cmd(args);
  RunResult b = run_cmd(args);
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(a.out == b.out);
  CHECK(njson::parse(a.out)["dims"]["image"] == 6);
}

TEST_CASE("unitary: rational mode reports no integrality data") {
  RunResult r = run_cmd("unitary --weight '2,0;2' --disc 1 --mode rational");
  REQUIRE(r.code == 0);
  njson j = njson::parse(r.out);
  CHECK(j["p"].is_null());
  CHECK(j["min_p_valuation"].is_null());
  CHECK(j["flags"]["p_small"] == false);
  CHECK(j["pass"] == true);

  CHECK(run_cmd("unitary --weight '1;1' --disc 1 --mode rational --p 5").code == 2);
  CHECK(run_cmd("unitary --weight '1;1' --disc 1 --mode nonsense --p 5").code == 2);
}

TEST_CASE("unitary: precondition violations exit 2 naming the hypothesis") {
  RunResult bad = run_cmd("unitary --g 2 --weight '1,-1;0' --p 7 --disc 1", true);
  CHECK(bad.code == 2);
  CHECK(bad.out.find("effective") != std::string::npos);

  RunResult small = run_cmd("unitary --g 2 --weight '1,0;1' --p 3 --disc 1", true);
  CHECK(small.code == 2);
  CHECK(small.out.find("p > 2g") != std::string::npos);

  RunResult ram = run_cmd("unitary --weight '1;1' --p 7 --disc 7", true);
  CHECK(ram.code == 2);
  CHECK(ram.out.find("ramifie") != std::string::npos);

  CHECK(run_cmd("unitary --g 1 --weight '1,0;1' --p 7 --disc 1").code == 2);
  CHECK(run_cmd("unitary --weight '1;1' --disc 1").code == 2);
  CHECK(run_cmd("unitary --weight 'garbage'").code == 2);
  CHECK(run_cmd("nonsense-subcommand").code == 2);
  CHECK(run_cmd("--help").code == 0);
}

TEST_CASE("unitary: batch isolation and parallel determinism") {
  const std::string args =
      "unitary --weight '1;1' --weight '2;2' --weight '3;3' --p 7 --disc 1";
  RunResult seq = run_cmd(args + " --jobs 1");
  RunResult par = run_cmd(args + " --jobs 3");
  REQUIRE(seq.code == 0);
  CHECK(par.code == 0);
  CHECK(seq.out == par.out);
  njson arr = njson::parse(seq.out);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 3);
  CHECK(arr[2]["weight"] == "3;3");

  RunResult mixed = run_cmd("unitary --weight '1;1' --weight '1,-1;0' --p 7 --disc 1");
  CHECK(mixed.code == 2);
  njson marr = njson::parse(mixed.out);
  REQUIRE(marr.size() == 2);
  CHECK(marr[0]["pass"] == true);
  CHECK(marr[1].contains("error"));
}

TEST_CASE("siegel-check: pass, failure codes, and cap handling") {
  RunResult ok = run_cmd("siegel-check --g 1 --s 2 --p 5");
  REQUIRE(ok.code == 0);
  njson j = njson::parse(ok.out);
  CHECK(j["dim"] == 16);
  CHECK(j["checks"]["u_semi_invariance"] == true);
  CHECK(j["checks"]["adjointness"] == true);
  CHECK(j["checks"]["theta_equivariance"] == true);
  CHECK(j["checks"]["theta_p_integral"] == true);
  CHECK(j["pass"] == true);
  RunResult again = run_cmd("siegel-check --g 1 --s 2 --p 5");
  CHECK(again.out == ok.out);

  CHECK(run_cmd("siegel-check --g 1 --s 2 --p 2").code == 2);
  CHECK(run_cmd("siegel-check --g 2 --s 2 --p 4").code == 2);
  CHECK(run_cmd("siegel-check --g 3 --s 4 --p 7").code == 2);  // default cap
}

TEST_CASE("cap: environment variable and flag precedence") {
  // Direct shell prefixes so the child sees the variable.
  auto run_env = [](const std::string& env_prefix, const std::string& args) {
    const std::string cmd = env_prefix + " " + binary() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (fread(buf, 1, sizeof buf, pipe) > 0) {
    }
    const int status = pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(run_env("env WEYL_CARVE_CAP=8", "siegel-check --g 1 --s 2 --p 5") == 2);
  CHECK(run_env("env WEYL_CARVE_CAP=16", "siegel-check --g 1 --s 2 --p 5") == 0);
  // The flag outranks the environment.
  CHECK(run_env("env WEYL_CARVE_CAP=8", "siegel-check --g 1 --s 2 --p 5 --cap 16") == 0);
  CHECK(run_env("env WEYL_CARVE_CAP=notanumber", "siegel-check --g 1 --s 2 --p 5") == 2);
}

TEST_CASE("dump-projector: round-trips and matches the library objects") {
  RunResult r = run_cmd("dump-projector --g 1 --s 1 --p 5 --disc 1");
  REQUIRE(r.code == 0);
  weylcarve::repspace::LinMap q = weylcarve::repspace::parse_linmap(r.out);
  CHECK(q.cols.size() == 2);  // two diagonal entries on the degree-1 lines
  CHECK(weylcarve::repspace::dump_linmap(q) == r.out);

  RunResult rr = run_cmd("dump-projector --g 1 --s 1 --p 5 --disc 1");
  CHECK(rr.out == r.out);

  // Full carve projector dump through --weight.
  RunResult w = run_cmd("dump-projector --weight '1,1;2' --p 7 --disc 1");
  REQUIRE(w.code == 0);
  weylcarve::repspace::LinMap proj = weylcarve::repspace::parse_linmap(w.out);
  CHECK(weylcarve::repspace::dump_linmap(proj) == w.out);
  CHECK(weylcarve::repspace::image_basis(proj).dim() == 2);

  // --out writes the same bytes to a file.
  const std::string path =
      (std::filesystem::temp_directory_path() / "carve_cli_dump.txt").string();
  RunResult f = run_cmd("dump-projector --g 1 --s 1 --p 5 --disc 1 --out " + path);
  CHECK(f.code == 0);
  std::ifstream is(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  CHECK(bytes == r.out);
  std::filesystem::remove(path);

  CHECK(run_cmd("dump-projector --p 5").code == 2);  // needs --g/--s or --weight
}
