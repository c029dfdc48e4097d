#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// Golden-file tests for the command line tool. Each command is run three
// times; all runs must match the checked-in snapshot byte for byte. Set
// ORBISURF_REGEN_GOLDEN=1 to rewrite the snapshots from the current binary.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct GoldenCase {
  const char* file;
  const char* args;
};

const GoldenCase CASES[] = {
    {"resolve_6_5.json", "resolve --type 6,5"},
    {"chern_mu3_reg.json", "chern --group 3 --weights 1,1 --rep 1,1,1"},
    {"chern_mu4_alpha.json", "chern --group 4 --weights 1,3 --alpha 1,0,1,0"},
    {"euler_pairing.json",
     "euler-pairing"
     " --surface '{\"points\":[{\"label\":\"p\",\"r\":2,\"w1\":1,\"w2\":1}],\"chi\":1}'"
     " --a '{\"m\":1,\"n0\":0,\"coeffs\":{}}'"
     " --b '{\"m\":0,\"n0\":1,\"coeffs\":{\"p\":[0]}}'"},
    {"hilb_dim_mu2.json", "hilb-dim --group 2 --weights 1,1 --alpha 1,0"},
    {"oracle_mu2.json", "oracle --group 2 --weights 1,1 --ideal '1,0;0,2'"},
    {"walls_rank2.json",
     "walls --gram '[[1,0],[0,-1]]' --r 2 --delta 4 --h1 2,1 --h2 2,-1"},
    {"classify_i3.json",
     "classify-fiber --config '{\"components\":[{\"label\":\"A\",\"self\":-2},"
     "{\"label\":\"B\",\"self\":-2},{\"label\":\"C\",\"self\":-2}],"
     "\"gram\":[[-2,1,1],[1,-2,1],[1,1,-2]]}'"},
    {"classify_i2.dot",
     "classify-fiber --emit dot --config '{\"components\":[{\"label\":\"A\",\"self\":-2},"
     "{\"label\":\"B\",\"self\":-2}],"
     "\"points\":[{\"branches\":{\"A\":1,\"B\":1}},{\"branches\":{\"A\":1,\"B\":1}}]}'"},
    {"scenario_d4.json", "scenario --case D4"},
    {"scenario_e8.dot", "scenario --case E8 --emit dot"},
    {"scenario_all.json", "scenario --case all"},
    {"table1.json", "table1"},
};

std::string run_command(const std::string& args, int& exit_code) {
  std::string cmd = "ORBISURF_COLOR=0 '" ORBISURF_CLI_PATH "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string golden_path(const char* file) {
  return std::string(ORBISURF_GOLDEN_DIR) + "/" + file;
}

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  ok = in.good();
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool regen_mode() {
  const char* v = std::getenv("ORBISURF_REGEN_GOLDEN");
  return v != nullptr && std::string(v) == "1";
}

}  // namespace

TEST_CASE("command outputs are stable and match the snapshots") {
  for (const GoldenCase& gc : CASES) {
    std::string which(gc.file);
    CAPTURE(which);
    int code = -1;
    std::string first = run_command(gc.args, code);
    CHECK(code == 0);
    CHECK(!first.empty());

    if (regen_mode()) {
      std::ofstream out(golden_path(gc.file), std::ios::binary);
      REQUIRE(out.good());
      out << first;
      continue;
    }

    bool ok = false;
    std::string want = read_file(golden_path(gc.file), ok);
    REQUIRE_MESSAGE(ok, "missing golden file ", gc.file,
                    " (run with ORBISURF_REGEN_GOLDEN=1 to create)");
    CHECK(first == want);
    for (int rep = 0; rep < 2; ++rep) {
      int code2 = -1;
      std::string again = run_command(gc.args, code2);
      CHECK(code2 == 0);
      CHECK(again == want);
    }
  }
}

TEST_CASE("error channels and exit codes") {
  int code = -1;
  // invalid singularity type: quotient weights must be coprime to r
  std::string out = run_command("resolve --type 4,2", code);
  CHECK(code == 1);
  CHECK(out.empty());  // the error object goes to stderr

  std::string usage = run_command("resolve", code);
  CHECK(code == 2);

  std::string table = run_command("table1", code);
  CHECK(code == 0);
}
