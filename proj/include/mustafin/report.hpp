#ifndef MUSTAFIN_REPORT_HPP
#define MUSTAFIN_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace mustafin {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "0.1.0";

struct RunConfig {
  std::string command;
  std::size_t n_plus_1 = 3;
  std::uint32_t p = 32003;
  unsigned d = 3;
  int n = 2;
  int rho = 2;
  std::vector<int> degrees;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::uint64_t bound = 32003;
  /// Fraction of trials that must succeed for star-like and mustafin-fiber.
  double min_success_ratio = 0.9;
  std::string curve = "u1^3+u2^3+u3^3";
  /// Optional h_i for syzygy-check; random forms are used when empty.
  std::vector<std::string> h;
  std::string path;
  std::string output;
  unsigned workers = 1;
};

const std::vector<std::string>& known_commands();

/// Throws InvalidArgumentError with a message naming the offending field.
void validate(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);
/// Missing fields keep their defaults; unknown fields are rejected.
RunConfig run_config_from_json(const nlohmann::json& j);

/// Report layout: schema_version, artifact, command, config, verdict,
/// result (deterministic) and timings_ms (not deterministic).
nlohmann::json dispatch(const RunConfig& cfg);

/// Runs every regular file of the directory in filename order; unreadable
/// or invalid entries are marked failed and the run continues.
nlohmann::json corpus_run(const std::string& path, unsigned workers = 1);

/// The report without timings, dumped with sorted keys.
std::string verdict_section(const nlohmann::json& report);

}  // namespace mustafin

#endif  // MUSTAFIN_REPORT_HPP
