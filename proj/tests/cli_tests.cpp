// End-to-end tests of the command-line binary: output contracts, exit codes,
// determinism, and ledger behavior.  The binary path comes in through the
// JETORBIT_CLI_PATH compile definition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;  // stdout only; stderr goes to /dev/null
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = (env_prefix.empty() ? std::string("env -u JETORBIT_SEED ")
                                              : "env " + env_prefix + " ") +
                          std::string(JETORBIT_CLI_PATH) + " " + args +
                          " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path temp_path(const std::string& tag) {
  return std::filesystem::temp_directory_path() /
         ("jetorbit-cli-test-" + tag + "-" + std::to_string(getpid()));
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("bound prints the value or a dash") {
  CHECK(run_cli("bound --family on --n 3 --r 2").out == "3\n");
  CHECK(run_cli("bound --family co --n 4 --r 3").out == "39\n");
  CHECK(run_cli("bound --family co --n 2 --r 3").out == "-\n");
  CHECK(run_cli("bound --family on --n 6 --r 5").out == "4164\n");
  CHECK(run_cli("bound --family on --n 3 --r 2").exit_code == 0);
}

TEST_CASE("table renders the requested grid") {
  const RunResult md = run_cli("table --family on");
  CHECK(md.exit_code == 0);
  CHECK(md.out.find("| n \\ r | 1 | 2 | 3 | 4 | 5 |") == 0);
  CHECK(md.out.find("| 6 | - | 90 | 510 | 1644 | 4164 |") != std::string::npos);
  CHECK(md.out.find("exact count is 1") != std::string::npos);

  const RunResult csv = run_cli("table --family co --format csv");
  CHECK(csv.exit_code == 0);
  const auto lines = lines_of(csv.out);
  REQUIRE(lines.size() == 31);
  CHECK(lines[0] == "family,n,r,value");

  const RunResult js = run_cli("table --family id --n-max 3 --r-max 3 --format json");
  CHECK(js.exit_code == 0);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["cells"].size() == 9);
  for (const auto& cell : j["cells"]) CHECK(cell["value"].is_number_integer());
}

TEST_CASE("table --out writes the same bytes to a file") {
  const auto path = temp_path("table-out");
  const RunResult run = run_cli("table --family on --format csv --out " + path.string());
  CHECK(run.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == run.out);
  std::filesystem::remove(path);
}

TEST_CASE("orbit emits the report JSON with the documented fields") {
  const RunResult run = run_cli("orbit --family id --n 2 --r 1");
  CHECK(run.exit_code == 0);
  const auto j = nlohmann::ordered_json::parse(run.out);

  const std::vector<std::string> want_keys = {
      "family", "n",       "r",            "fiber_dim", "group_dim",
      "rank",   "invariant_count", "bound", "singular_gap", "samples",
      "seed",   "ambiguous", "caveat"};
  std::vector<std::string> got_keys;
  for (auto it = j.begin(); it != j.end(); ++it) got_keys.push_back(it.key());
  CHECK(got_keys == want_keys);

  CHECK(j["family"] == "id");
  CHECK(j["n"] == 2);
  CHECK(j["r"] == 1);
  CHECK(j["fiber_dim"] == 12);
  CHECK(j["group_dim"] == 10);
  CHECK(j["rank"] == 10);
  CHECK(j["invariant_count"] == 2);
  CHECK(j["bound"] == 2);
  CHECK(j["samples"] == 5);
  CHECK(j["seed"] == 42);
  CHECK(j["ambiguous"] == false);
  CHECK(j["caveat"].is_string());
  CHECK(!j["caveat"].get<std::string>().empty());
}

TEST_CASE("every reported count respects the bound") {
  for (const std::string args :
       {std::string("orbit --family on --n 2 --r 2"),
        std::string("orbit --family co --n 2 --r 1"),
        std::string("orbit --family scalar --n 2 --r 2")}) {
    const RunResult run = run_cli(args);
    const auto j = nlohmann::json::parse(run.out);
    const std::int64_t bound = j["bound"].get<std::int64_t>();
    const std::int64_t count = j["invariant_count"].get<std::int64_t>();
    CHECK(count >= std::max<std::int64_t>(bound, 0));
  }
}

TEST_CASE("identical invocations produce identical bytes") {
  const std::string args = "orbit --family on --n 2 --r 2 --seed 7";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("environment variable supplies the default seed") {
  const RunResult env_run =
      run_cli("orbit --family id --n 2 --r 1", "JETORBIT_SEED=7");
  const RunResult flag_run = run_cli("orbit --family id --n 2 --r 1 --seed 7");
  CHECK(env_run.out == flag_run.out);

  // An explicit flag wins over the environment.
  const RunResult both =
      run_cli("orbit --family id --n 2 --r 1 --seed 9", "JETORBIT_SEED=7");
  CHECK(nlohmann::json::parse(both.out)["seed"] == 9);
}

TEST_CASE("exit codes follow the documented table") {
  // 0: success paths.
  CHECK(run_cli("verify --skip-orbit").exit_code == 0);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("--version").exit_code == 0);
  CHECK(run_cli("--version").out == "0.1.0\n");

  // 2: bad flags.
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("bound --family euclidean --n 2 --r 2").exit_code == 2);
  CHECK(run_cli("bound --family on").exit_code == 2);
  CHECK(run_cli("orbit --family on --n 2 --r 1 --samples 1").exit_code == 2);
  CHECK(run_cli("bound --family on --n 0 --r 2").exit_code == 2);

  // 3: ambiguous rank cut (a huge cutoff lands inside the true spectrum).
  const RunResult ambiguous = run_cli("orbit --family on --n 2 --r 3 --rel-tol 0.3");
  CHECK(ambiguous.exit_code == 3);
  CHECK(nlohmann::json::parse(ambiguous.out)["ambiguous"] == true);

  // 4: resource guard.
  CHECK(run_cli("orbit --family on --n 6 --r 6").exit_code == 4);

  // 5: unwritable output paths.
  CHECK(run_cli("orbit --family id --n 2 --r 1 --ledger /nonexistent-dir/x.jsonl")
            .exit_code == 5);
  CHECK(run_cli("table --family on --out /nonexistent-dir/t.md").exit_code == 5);
}

TEST_CASE("ledger lines accumulate and parse independently") {
  const auto path = temp_path("ledger");
  std::filesystem::remove(path);
  const std::string args = "orbit --family id --n 2 --r 1 --ledger " + path.string();
  CHECK(run_cli(args).exit_code == 0);
  CHECK(run_cli(args).exit_code == 0);

  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    ++count;
    const auto j = nlohmann::json::parse(line);
    CHECK(j["family"] == "id");
    CHECK(j["invariant_count"] == 2);
    CHECK(j["version"] == "0.1.0");
    const std::string ts = j["timestamp"].get<std::string>();
    REQUIRE(ts.size() == 20);  // e.g. 2026-01-02T03:04:05Z
    CHECK(ts[4] == '-');
    CHECK(ts[10] == 'T');
    CHECK(ts.back() == 'Z');
  }
  CHECK(count == 2);
  std::filesystem::remove(path);
}

TEST_CASE("verify reports the full pass summary") {
  const RunResult skip = run_cli("verify --skip-orbit");
  CHECK(skip.exit_code == 0);
  CHECK(skip.out == "60/60 table cells: PASS\n");

  const RunResult full = run_cli("verify");
  CHECK(full.exit_code == 0);
  CHECK(full.out == "60/60 table cells, 6/6 orbit checks: PASS\n");
}
