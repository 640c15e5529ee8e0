// End-to-end checks of the command-line tool: exit codes, output shapes and
// byte-level determinism. The binary path comes in via GHZSIM_CLI_PATH.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_cli(const std::string& args) {
  const std::string tmp = std::string(GHZSIM_CLI_TMPDIR) + "/cli_out.txt";
  const std::string cmd = std::string(GHZSIM_CLI_PATH) + " " + args + " > " + tmp + " 2>&1";
  const int status = std::system(cmd.c_str());
  CommandResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(tmp);
  std::stringstream ss;
  ss << f.rdbuf();
  r.output = ss.str();
  return r;
}

}  // namespace

TEST_CASE("teleport ghz exhaustive exits 0 with 8 transcripts") {
  const CommandResult r = run_cli("teleport --scheme ghz --alpha 0.6 --beta 0.8 --mode exhaustive");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["schema_version"] == 1);
  CHECK(j["transcripts"].size() == 8);
  CHECK(j["summary"]["branches"] == 8);
  CHECK(j["summary"]["min_fidelity"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("teleport tight basis-state input") {
  const CommandResult r = run_cli("teleport --scheme tight --alpha 1 --beta 0");
  CHECK(r.exit_code == 0);
}

TEST_CASE("general two-qubit state through the ghz scheme reports failure") {
  const CommandResult r =
      run_cli("teleport --scheme ghz --state general:0.5,0.5,0.5,0.5");
  CHECK(r.exit_code == 1);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["min_fidelity"].get<double>() < 1.0 - 1e-6);
}

TEST_CASE("sample mode requires a seed; exhaustive ignores it") {
  CHECK(run_cli("teleport --scheme ghz --alpha 0.6 --beta 0.8 --mode sample").exit_code == 2);
  CHECK(run_cli("teleport --scheme ghz --alpha 0.6 --beta 0.8 --mode sample --seed 7").exit_code ==
        0);
  CHECK(run_cli("teleport --scheme ghz --alpha 0.6 --beta 0.8 --seed 7").exit_code == 0);
}

TEST_CASE("identical config and seed give byte-identical output") {
  const std::string args = "teleport --scheme ghz --alpha 0.6 --beta 0.8 --mode sample --seed 42";
  const CommandResult a = run_cli(args);
  const CommandResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("splitmix64") != std::string::npos);
}

TEST_CASE("densecode round trips") {
  const CommandResult single = run_cli("densecode --scheme ghz --message 101");
  CHECK(single.exit_code == 0);
  const auto j = nlohmann::json::parse(single.output);
  CHECK(j["decoded"] == "101");

  CHECK(run_cli("densecode --scheme ghz").exit_code == 0);             // all 8 messages
  CHECK(run_cli("densecode --scheme nparty --n 5").exit_code == 0);    // all 32 messages
  CHECK(run_cli("densecode --scheme modified --n 4 --k 1 --den-width 4 --message 1011")
            .exit_code == 0);
  CHECK(run_cli("densecode --scheme ghz --message 10018").exit_code == 2);
}

TEST_CASE("capacity sweep emits the CSV row with c = 1.5 at alpha^2 = 0.5") {
  const CommandResult r = run_cli("capacity --n 3 --alpha-grid 21");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "N,alpha_sq,E,holevo,c,c_closed_form,abs_diff");
  bool found = false;
  while (std::getline(lines, line)) {
    if (line.rfind("3,0.5,", 0) == 0) {
      found = true;
      CHECK(line.find(",1.5,1.5,") != std::string::npos);
    }
  }
  CHECK(found);
}

TEST_CASE("teleclone writes the separable corrected state") {
  const CommandResult r = run_cli("teleclone --lambda0 0.3");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["rho_b"][0][0][0].get<double>() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(j["rho_c"][1][1][0].get<double>() == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(j["rho_bc_max_offdiagonal"].get<double>() < 1e-12);
  CHECK(j["transcripts"].size() == 4);
}

TEST_CASE("basis dump carries the completeness residual") {
  const CommandResult r = run_cli("basis --family ghz --n 4");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["num_qubits"] == 4);
  CHECK(j["elements"].size() == 16);
  CHECK(j["completeness_residual"].get<double>() < 1e-10);

  CHECK(run_cli("basis --family no-such-family").exit_code == 2);
}

TEST_CASE("verify passes end to end") {
  const CommandResult r = run_cli("verify");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("[FAIL]") == std::string::npos);
  CHECK(r.output.find("checks passed") != std::string::npos);
}

TEST_CASE("output files land in GHZSIM_OUTPUT_DIR") {
  const std::string dir = std::string(GHZSIM_CLI_TMPDIR);
  const std::string cmd = "GHZSIM_OUTPUT_DIR=" + dir + " " + GHZSIM_CLI_PATH +
                          " basis --family bell --out bell.json > /dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream f(dir + "/bell.json");
  REQUIRE(f.good());
  nlohmann::json j;
  f >> j;
  CHECK(j["label"] == "bell");
}

TEST_CASE("nearly normalized input is accepted with a warning, junk is not") {
  CHECK(run_cli("teleport --scheme tight --alpha 0.60000001 --beta 0.8").exit_code == 0);
  CHECK(run_cli("teleport --scheme tight --alpha 0.9 --beta 0.9").exit_code == 2);
  CHECK(run_cli("teleport --scheme tight --alpha bogus --beta 0.8").exit_code == 2);
}
