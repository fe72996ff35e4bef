// Command-line surface: closed-form lower bounds, bound tables, seeded orbit
// rank measurements, and the self-verification suite.
//
// Exit codes:
//   0  success
//   1  verification failure (or an unexpected computational error)
//   2  bad flags / invalid arguments
//   3  orbit rank ambiguous (weak singular gap or unstable maximum)
//   4  resource guard tripped (fiber_dim * group_dim too large; see --force)
//   5  I/O failure (--out or --ledger path not writable)

#include <CLI11.hpp>

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <jetorbit/bounds.hpp>
#include <jetorbit/chart.hpp>
#include <jetorbit/orbit.hpp>
#include <jetorbit/report_json.hpp>
#include <jetorbit/verify.hpp>
#include <jetorbit/version.hpp>

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kBadFlags = 2;
constexpr int kAmbiguous = 3;
constexpr int kResourceGuard = 4;
constexpr int kIoError = 5;

// Largest fiber_dim * group_dim attempted without --force.
constexpr std::int64_t kGuardLimit = 10000000;

long long default_seed() {
  if (const char* env = std::getenv("JETORBIT_SEED")) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && errno == 0 && v >= 0) return v;
  }
  return 42;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << text;
  out.flush();
  return static_cast<bool>(out);
}

// The whole line is formatted first and handed to the stream in one piece so
// concurrent appenders do not interleave inside a line.
bool append_line(const std::string& path, const std::string& line) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) return false;
  out << line + "\n";
  out.flush();
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace jetorbit;

  CLI::App app{
      "scalar differential invariants of G-structures: closed-form lower "
      "bounds and measured generic orbit ranks on jet fibers"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string family_tok;
  int n = 2;
  int r = 2;
  int n_max = 6;
  int r_max = 5;
  int samples = 5;
  long long seed = default_seed();
  double rel_tol = 1e-9;
  std::string format_tok = "markdown";
  std::string out_path;
  std::string ledger_path;
  bool skip_orbit = false;
  bool force = false;

  const std::vector<std::string> family_tokens{"on", "co", "id", "scalar"};
  const std::vector<std::string> format_tokens{"markdown", "csv", "json"};

  CLI::App* bound_cmd = app.add_subcommand(
      "bound", "print the closed-form lower bound for one (family, n, r)");
  bound_cmd->add_option("--family", family_tok, "structure group family")
      ->required()
      ->check(CLI::IsMember(family_tokens));
  bound_cmd->add_option("--n", n, "manifold dimension (>= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  bound_cmd->add_option("--r", r, "jet order (>= 0)")
      ->required()
      ->check(CLI::NonNegativeNumber);

  CLI::App* table_cmd =
      app.add_subcommand("table", "render the grid of lower bounds");
  table_cmd->add_option("--family", family_tok, "structure group family")
      ->required()
      ->check(CLI::IsMember(family_tokens));
  table_cmd->add_option("--n-max", n_max, "largest manifold dimension (rows)")
      ->check(CLI::Range(1, 16));
  table_cmd->add_option("--r-max", r_max, "largest jet order (columns)")
      ->check(CLI::Range(1, 16));
  table_cmd->add_option("--format", format_tok, "markdown, csv, or json")
      ->check(CLI::IsMember(format_tokens));
  table_cmd->add_option("--out", out_path, "also write the rendering to this file");

  CLI::App* orbit_cmd = app.add_subcommand(
      "orbit", "measure the generic orbit rank and the invariant count");
  orbit_cmd->add_option("--family", family_tok, "structure group family")
      ->required()
      ->check(CLI::IsMember(family_tokens));
  orbit_cmd->add_option("--n", n, "manifold dimension")
      ->required()
      ->check(CLI::Range(1, 8));
  orbit_cmd->add_option("--r", r, "jet order of the section")
      ->required()
      ->check(CLI::Range(0, 200));
  orbit_cmd->add_option("--samples", samples, "independent random basepoints (>= 3)")
      ->check(CLI::Range(3, 1000));
  orbit_cmd
      ->add_option("--seed", seed,
                   "RNG seed (env JETORBIT_SEED overrides the default 42)")
      ->check(CLI::NonNegativeNumber);
  orbit_cmd->add_option("--rel-tol", rel_tol, "relative singular-value cutoff")
      ->check(CLI::PositiveNumber);
  orbit_cmd->add_option("--out", out_path, "also write the JSON report to this file");
  orbit_cmd->add_option("--ledger", ledger_path,
                        "append a timestamped JSON line to this file");
  orbit_cmd->add_flag("--force", force, "override the resource guard");

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "recompute the embedded tables and the fixed orbit checks");
  verify_cmd->add_flag("--skip-orbit", skip_orbit, "check the bound tables only");
  verify_cmd->add_option("--samples", samples, "basepoints per orbit check (>= 3)")
      ->check(CLI::Range(3, 1000));
  verify_cmd
      ->add_option("--seed", seed,
                   "RNG seed (env JETORBIT_SEED overrides the default 42)")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--rel-tol", rel_tol, "relative singular-value cutoff")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadFlags;
  }

  try {
    if (bound_cmd->parsed()) {
      const std::int64_t v = lower_bound(family_from_token(family_tok), n, r);
      if (v < 0)
        std::cout << "-\n";
      else
        std::cout << v << "\n";
      return kOk;
    }

    if (table_cmd->parsed()) {
      const std::string text = render_table(
          family_from_token(family_tok), n_max, r_max,
          *table_format_from_token(format_tok));
      std::cout << text;
      if (!out_path.empty() && !write_file(out_path, text)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kIoError;
      }
      return kOk;
    }

    if (orbit_cmd->parsed()) {
      const StructureGroupSpec spec{family_from_token(family_tok), n};
      const std::int64_t fiber = fiber_dimension(n, r, spec.chart_dim());
      const std::int64_t group = jet_group_dimension(n, r + 1);
      if (!force && fiber * group > kGuardLimit) {
        std::cerr << "resource guard: fiber_dim " << fiber << " x group_dim "
                  << group << " = " << fiber * group << " exceeds "
                  << kGuardLimit << "; rerun with --force to proceed\n";
        return kResourceGuard;
      }
      const OrbitReport rep = estimate_invariant_count(
          spec, r, samples, static_cast<std::uint64_t>(seed), rel_tol);
      nlohmann::ordered_json j = orbit_report_json(rep);
      const std::string text = j.dump(2) + "\n";
      std::cout << text;
      if (!out_path.empty() && !write_file(out_path, text)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kIoError;
      }
      if (!ledger_path.empty()) {
        j["timestamp"] = utc_timestamp();
        j["version"] = kVersion;
        if (!append_line(ledger_path, j.dump())) {
          std::cerr << "error: cannot append to " << ledger_path << "\n";
          return kIoError;
        }
      }
      return rep.ambiguous ? kAmbiguous : kOk;
    }

    if (verify_cmd->parsed()) {
      const VerificationReport rep = run_verification(
          skip_orbit, static_cast<std::uint64_t>(seed), samples, rel_tol);
      for (const std::string& f : rep.failures) std::cout << "FAIL: " << f << "\n";
      std::cout << rep.summary() << "\n";
      return rep.passed() ? kOk : kFailure;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadFlags;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
