#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "law_check.hpp"
#include "mustafin/errors.hpp"
#include "mustafin/report.hpp"

using namespace mustafin;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

RunConfig small_syzygy_run() {
  RunConfig cfg;
  cfg.command = "syzygy-check";
  cfg.n = 2;
  cfg.rho = 2;
  cfg.degrees = {2, 1, 1};
  cfg.seed = 3;
  return cfg;
}

/// Fresh directory under the system temporary path, removed on scope exit.
struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("mustafin-" + tag + "-" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
};

int run_cli(const std::string& args) {
  int status = std::system((std::string(MUSTAFIN_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("configuration validation") {
  CHECK_NOTHROW(validate(small_syzygy_run()));

  RunConfig bad = small_syzygy_run();
  bad.degrees = {2, 2, 2};
  CHECK_THROWS_AS(validate(bad), InvalidArgumentError);

  RunConfig composite = small_syzygy_run();
  composite.p = 32004;
  CHECK_THROWS_AS(validate(composite), InvalidArgumentError);

  RunConfig ratio;
  ratio.command = "star-like";
  ratio.min_success_ratio = 1.5;
  CHECK_THROWS_AS(validate(ratio), InvalidArgumentError);

  RunConfig unknown;
  unknown.command = "frobnicate";
  CHECK_THROWS_AS(validate(unknown), InvalidArgumentError);

  RunConfig no_trials;
  no_trials.command = "fermat";
  no_trials.trials = 0;
  CHECK_THROWS_AS(validate(no_trials), InvalidArgumentError);
}

TEST_CASE("configurations survive a JSON round trip") {
  RunConfig cfg = small_syzygy_run();
  cfg.h = {"x1^2", "x2", "x3"};
  cfg.min_success_ratio = 0.75;
  RunConfig back = run_config_from_json(to_json(cfg));
  CHECK(to_json(back) == to_json(cfg));

  json partial{{"command", "fermat"}, {"prime", 101}};
  RunConfig p = run_config_from_json(partial);
  CHECK(p.p == 101);
  CHECK(p.d == RunConfig{}.d);

  CHECK_THROWS_AS(run_config_from_json(json{{"command", "fermat"}, {"colour", "red"}}), InvalidArgumentError);
  CHECK_THROWS_AS(run_config_from_json(json{{"trials", "many"}}), InvalidArgumentError);
  CHECK_THROWS_AS(run_config_from_json(json::array()), InvalidArgumentError);
}

TEST_CASE("report layout") {
  json report = dispatch(small_syzygy_run());
  for (const char* key : {"schema_version", "artifact", "command", "config", "verdict", "result", "timings_ms"}) {
    CHECK_MESSAGE(report.contains(key), key);
  }
  CHECK(report.at("schema_version") == kReportSchemaVersion);
  CHECK(report.at("command") == "syzygy-check");
  CHECK(report.at("verdict").is_boolean());
  CHECK(report.at("verdict") == report.at("result").at("verdict"));

  std::string section = verdict_section(report);
  CHECK(section.find("timings_ms") == std::string::npos);
  CHECK(section == verdict_section(dispatch(small_syzygy_run())));
}

TEST_CASE("corpus runs") {
  ScratchDir empty("empty");
  json none = corpus_run(empty.path.string());
  CHECK(none.at("verdict") == true);
  CHECK(none.at("entries").empty());

  ScratchDir dir("corpus");
  dir.write("b_syzygy.json", to_json(small_syzygy_run()).dump());
  dir.write("a_broken.json", "{ not json");
  RunConfig invalid = small_syzygy_run();
  invalid.degrees = {2, 2, 2};
  dir.write("c_invalid.json", to_json(invalid).dump());
  json report = corpus_run(dir.path.string());
  const auto& entries = report.at("entries");
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].at("file") == "a_broken.json");
  CHECK(entries[0].at("status") == "error");
  CHECK(entries[1].at("file") == "b_syzygy.json");
  CHECK(entries[1].at("status") == "ok");
  CHECK(entries[1].at("verdict") == dispatch(small_syzygy_run()).at("verdict"));
  CHECK(entries[2].at("status") == "error");
  CHECK(report.at("verdict") == false);
  CHECK(report.at("failed") == 2 + (entries[1].at("verdict") == true ? 0 : 1));

  CHECK(verdict_section(corpus_run(dir.path.string(), 2)) == verdict_section(report));
  CHECK_THROWS_AS(corpus_run((dir.path / "missing").string()), InvalidArgumentError);
}

TEST_CASE("command-line exit codes") {
  ScratchDir dir("cli");
  std::string report = (dir.path / "out.json").string();
  CHECK(run_cli("syzygy-check --n 2 --rho 2 --degrees 2,2,2 --report " + report) == 2);
  CHECK_FALSE(fs::exists(report));
  CHECK(run_cli("frobnicate") != 0);

  int code = run_cli("syzygy-check --n 2 --rho 2 --degrees 2,1,1 --seed 3 --report " + report);
  REQUIRE(fs::exists(report));
  json written = json::parse(std::ifstream(report));
  CHECK((code == 0) == written.at("verdict").get<bool>());
  json direct = dispatch(small_syzygy_run());
  CHECK(written.at("result") == direct.at("result"));
  CHECK(written.at("config").at("output") == report);
}

TEST_CASE("reporting invariants") { mustafin::testing::check_laws(mustafin::testing::cli_laws()); }
