#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "harness.hpp"
#include "mustafin/report.hpp"

#ifndef MUSTAFIN_CLI_PATH
#error "MUSTAFIN_CLI_PATH must name the command-line binary"
#endif

namespace mustafin::testing {

namespace {

const char* kCurves[] = {"u1^3+u2^3+u3^3", "u1^2+u2^2+u3^2", "u1^2*u2+u3^3"};

/// Small configurations that finish in well under a second.
RunConfig random_run_config(SplitMix64& rng) {
  RunConfig cfg;
  cfg.seed = rng.below(1000000);
  cfg.trials = 1 + rng.below(2);
  switch (rng.below(6)) {
    case 0:
      cfg.command = "mustafin-fiber";
      cfg.n_plus_1 = 2;
      cfg.min_success_ratio = rng.below(2) ? 1.0 : 0.5;
      break;
    case 1:
      cfg.command = "star-like";
      cfg.n_plus_1 = 2 + rng.below(2);
      cfg.curve = kCurves[rng.below(3)];
      break;
    case 2:
      cfg.command = "syzygy-check";
      cfg.n = 2;
      cfg.rho = 2;
      cfg.degrees = rng.below(2) ? std::vector<int>{2, 1, 1} : std::vector<int>{1, 1, 2};
      cfg.trials = 1;
      break;
    case 3:
      cfg.command = "curve-model";
      cfg.n_plus_1 = 2;
      cfg.curve = kCurves[rng.below(2)];
      break;
    case 4:
      cfg.command = "fermat";
      cfg.d = 1;
      cfg.trials = 1;
      break;
    default:
      cfg.command = "syzygy-check";
      cfg.n = 2;
      cfg.rho = 2;
      cfg.degrees = {2, 2, 2};  // violates sum d_i = n rho
      cfg.trials = 1;
      break;
  }
  if (rng.below(8) == 0) cfg.p = 32004;
  return cfg;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

std::string command_line(const RunConfig& cfg, const std::string& report) {
  std::ostringstream cmd;
  cmd << MUSTAFIN_CLI_PATH << " " << cfg.command << " --prime " << cfg.p << " --seed " << cfg.seed;
  if (cfg.command == "mustafin-fiber" || cfg.command == "star-like") {
    cmd << " --n " << cfg.n_plus_1 << " --trials " << cfg.trials << " --min-ratio " << cfg.min_success_ratio;
  }
  if (cfg.command == "curve-model") cmd << " --n " << cfg.n_plus_1;
  if (cfg.command == "star-like" || cfg.command == "curve-model") cmd << " --curve " << quoted(cfg.curve);
  if (cfg.command == "syzygy-check") {
    cmd << " --n " << cfg.n << " --rho " << cfg.rho << " --trials " << cfg.trials << " --degrees ";
    for (std::size_t k = 0; k < cfg.degrees.size(); ++k) cmd << (k ? "," : "") << cfg.degrees[k];
  }
  if (cfg.command == "fermat") cmd << " --d " << cfg.d << " --trials " << cfg.trials;
  cmd << " --report " << quoted(report) << " 2>/dev/null";
  return cmd.str();
}

bool is_valid(const RunConfig& cfg) {
  try {
    validate(cfg);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

std::vector<Law> cli_laws() {
  std::vector<Law> laws;

  laws.push_back({"cli-reporting", "verdict sections are deterministic", kMinCases,
                  [](SplitMix64& rng, std::size_t) -> std::optional<std::string> {
                    RunConfig cfg = random_run_config(rng);
                    if (!is_valid(cfg)) return std::nullopt;
                    std::string first = verdict_section(dispatch(cfg));
                    std::string second = verdict_section(dispatch(cfg));
                    if (first != second) return "two runs of " + cfg.command + " differ";
                    RunConfig echoed = run_config_from_json(to_json(cfg));
                    if (verdict_section(dispatch(echoed)) != first) return "the echoed config gives another report";
                    return std::nullopt;
                  }});

  laws.push_back({"cli-reporting", "exit status is zero iff the verdict is true", kMinCases,
                  [](SplitMix64& rng, std::size_t index) -> std::optional<std::string> {
                    RunConfig cfg = random_run_config(rng);
                    auto report = std::filesystem::temp_directory_path() /
                                  ("mustafin-law-" + std::to_string(::getpid()) + "-" + std::to_string(index) + ".json");
                    std::filesystem::remove(report);
                    int status = std::system(command_line(cfg, report.string()).c_str());
                    if (status == -1 || !WIFEXITED(status)) return "could not run the command-line binary";
                    int code = WEXITSTATUS(status);
                    if (!is_valid(cfg)) {
                      if (code != 2) return testing::mismatch("exit code for an invalid config", "2", std::to_string(code));
                      if (std::filesystem::exists(report)) return "a report was written for an invalid config";
                      return std::nullopt;
                    }
                    std::ifstream in(report);
                    if (!in) return "no report written (exit " + std::to_string(code) + ")";
                    auto json = nlohmann::json::parse(in);
                    std::filesystem::remove(report);
                    bool verdict = json.at("verdict").get<bool>();
                    if ((code == 0) != verdict) {
                      return cfg.command + ": exit " + std::to_string(code) + " with verdict " + (verdict ? "true" : "false");
                    }
                    return std::nullopt;
                  }});

  return laws;
}

}  // namespace mustafin::testing
