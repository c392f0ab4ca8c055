#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "patient_pricing/io.hpp"
#include "test_support.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

using namespace patient_pricing;
using test_support::R;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args, bool raw_command = false) {
  const std::string command =
      (raw_command ? args : std::string(PATIENT_PRICING_CLI_PATH) + " " + args) + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe)) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

void write_demo_files() {
  atomic_write_file("cli_d1.json", serialize_distribution(test_support::demo_one()));
  atomic_write_file("cli_d2.json", serialize_distribution(test_support::demo_two()));
  atomic_write_file("cli_mixture.json",
                    serialize_mixed_strategy(test_support::demo_two_mixture()));
}

}  // namespace

TEST_CASE("separation demo prints the hierarchy and is deterministic") {
  const auto first = run_cli("separation-demo");
  CHECK(first.exit_code == 0);
  CHECK(first.output.find("D1: fixed 4/9 < pure 2/3") != std::string::npos);
  CHECK(first.output.find("D2: pure 4/9 < mixed >= 13/27") != std::string::npos);
  const auto second = run_cli("separation-demo");
  CHECK(first.output == second.output);
}

TEST_CASE("plan-pure writes the strategy file and prints the revenue") {
  write_demo_files();
  const auto result = run_cli("plan-pure --dist cli_d1.json --out cli_plan1.json");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("revenue 2/3") != std::string::npos);
  CHECK(result.output.find("prices 1 2/3 1/3") != std::string::npos);
  CHECK(parse_pure_strategy(read_file("cli_plan1.json")) == test_support::pricing({"1", "2/3", "1/3"}));
}

TEST_CASE("plan-pure supports epsilon grids") {
  write_demo_files();
  const auto result = run_cli("plan-pure --dist cli_d1.json --epsilon 1/3");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("revenue 2/3") != std::string::npos);
}

TEST_CASE("parse failures exit with code 1 and point at the input") {
  atomic_write_file("cli_broken.json", "{\"w_max\": 1, \n  \"support\": [}\n");
  const auto broken = run_cli("plan-pure --dist cli_broken.json");
  CHECK(broken.exit_code == 1);
  CHECK(broken.output.find("line") != std::string::npos);

  const auto missing = run_cli("plan-pure --dist does_not_exist.json");
  CHECK(missing.exit_code == 1);

  const auto bad_flags = run_cli("plan-pure");
  CHECK(bad_flags.exit_code == 1);
}

TEST_CASE("plan-mixed reports the demo optimum and writes a loadable file") {
  write_demo_files();
  const auto result =
      run_cli("plan-mixed --dist cli_d2.json --alphabet 1/3,2/3,1 --out cli_plan2.json");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("revenue 1/2") != std::string::npos);
  const auto strategy = parse_mixed_strategy(read_file("cli_plan2.json"));
  CHECK(strategy.support().size() == 2);
}

TEST_CASE("plan-mixed accepts an epsilon grid") {
  write_demo_files();
  const auto result = run_cli("plan-mixed --dist cli_d2.json --epsilon 1/3");
  CHECK(result.exit_code == 0);
  // The grid {0, 1/3, 2/3, 1} contains the value support, so the optimum
  // matches the explicit-alphabet run.
  CHECK(result.output.find("revenue 1/2") != std::string::npos);

  const auto neither = run_cli("plan-mixed --dist cli_d2.json");
  CHECK(neither.exit_code == 1);
  const auto both = run_cli("plan-mixed --dist cli_d2.json --alphabet 1/2 --epsilon 1/2");
  CHECK(both.exit_code == 1);
}

TEST_CASE("planner guards exit with code 2") {
  const FiniteDistribution deep(5, {{BuyerType{R("1/2"), 5}, R("1")}});
  atomic_write_file("cli_deep.json", serialize_distribution(deep));
  const auto result = run_cli("plan-mixed --dist cli_deep.json --alphabet 1/2");
  CHECK(result.exit_code == 2);
  const auto lifted = run_cli("plan-mixed --dist cli_deep.json --alphabet 1/2 --max-w-guard 5");
  CHECK(lifted.exit_code == 0);
}

TEST_CASE("best-response inspects mixed strategies") {
  write_demo_files();
  const auto result = run_cli(
      "best-response --strategy cli_mixture.json --value 1 --patience 2 --realized 2/3,1");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("utility 1/3") != std::string::npos);
  CHECK(result.output.find("threshold [2/3] 7/9") != std::string::npos);
  CHECK(result.output.find("bought step 1 price 2/3") != std::string::npos);
}

TEST_CASE("learn emits per-trial rows and a summary block") {
  write_demo_files();
  const auto result =
      run_cli("learn --dist cli_d1.json --mode pure --m 3,6 --trials 3 --seed 7");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("m,trial,gap") != std::string::npos);
  CHECK(result.output.find("m,trials,mean_gap,std_error") != std::string::npos);
}

TEST_CASE("online emits traces and a summary") {
  write_demo_files();
  const auto result = run_cli(
      "online --dist cli_d1.json --mode pure --T 8 --seeds 1..2 --out cli_trace.csv "
      "--summary-out cli_summary.csv");
  CHECK(result.exit_code == 0);
  const std::string trace = read_file("cli_trace.csv");
  CHECK(trace.find("seed,t,instant_regret,cum_regret") != std::string::npos);
  const std::string summary = read_file("cli_summary.csv");
  CHECK(summary.find("slope,") != std::string::npos);
}

TEST_CASE("worker-count caps do not change results") {
  write_demo_files();
  const std::string args =
      "learn --dist cli_d1.json --mode pure --m 4,8 --trials 6 --seed 13";
  const auto serial = run_cli("env PATIENT_PRICING_THREADS=1 " + std::string(PATIENT_PRICING_CLI_PATH) +
                                  " " + args,
                              true);
  const auto parallel = run_cli("env PATIENT_PRICING_THREADS=4 " + std::string(PATIENT_PRICING_CLI_PATH) +
                                    " " + args,
                                true);
  CHECK(serial.exit_code == 0);
  CHECK(serial.output == parallel.output);
}

TEST_CASE("shatter prints a per-sign report") {
  const auto result = run_cli("shatter --w 3 --gamma 1/8 --alpha 1/16");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("sigma +++") != std::string::npos);
  CHECK(result.output.find("verified true") != std::string::npos);
}

TEST_CASE("oracle subcommands answer directly") {
  write_demo_files();
  const auto pure = run_cli("oracle pure --dist cli_d2.json");
  CHECK(pure.exit_code == 0);
  CHECK(pure.output.find("revenue 4/9") != std::string::npos);

  const auto buyer =
      run_cli("oracle buyer --strategy cli_mixture.json --value 1 --patience 2");
  CHECK(buyer.exit_code == 0);
  CHECK(buyer.output.find("utility 1/3") != std::string::npos);

  const auto mixed = run_cli("oracle mixed --dist cli_d2.json --alphabet 1/3,2/3,1 --cap 2 --grid 24");
  CHECK(mixed.exit_code == 0);
  CHECK(mixed.output.find("revenue 1/2") != std::string::npos);

  const auto over = run_cli("oracle mixed --dist cli_d2.json --alphabet 1/3,2/3,1 --cap 5 --grid 6");
  CHECK(over.exit_code == 2);
}
