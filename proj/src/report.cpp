#include "mustafin/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "mustafin/errors.hpp"
#include "mustafin/fermat.hpp"
#include "mustafin/text_format.hpp"

namespace mustafin {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json matrix_json(const Matrix3& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& c : row) r.push_back(c.to_string());
    rows.push_back(r);
  }
  return rows;
}

json matrices_json(const std::vector<Matrix3>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(matrix_json(m));
  return out;
}

json polys_json(const std::vector<Polynomial>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

json component_report_json(const ComponentReport& r) {
  return {{"labels", r.labels},
          {"fiber_in_component", r.fiber_in_component},
          {"intersection_generators", r.intersection_generators},
          {"radical_failures", r.radical_failures},
          {"irredundant", r.irredundant},
          {"decomposition_holds", r.decomposition_holds},
          {"component_count", r.component_count},
          {"star_like", r.star_like},
          {"failed_checks", r.failed_checks}};
}

json certificate_json(const TrivialityCertificate& cert) {
  json comps = json::array();
  for (const auto& c : cert.components) {
    json kernel = json::array();
    for (const auto& rel : c.kernel_basis) kernel.push_back(polys_json(rel));
    comps.push_back({{"component", c.component},
                     {"row", polys_json(c.row)},
                     {"row_degrees", c.row_degrees},
                     {"unit_value", c.unit_value ? json(c.unit_value->to_string()) : json(nullptr)},
                     {"kernel_basis", kernel},
                     {"relations_hold", c.relations_hold},
                     {"syzygies_agree", c.syzygies_agree},
                     {"verdict", c.verdict},
                     {"diagnostic", c.diagnostic}});
  }
  return {{"components", comps}, {"verdict", cert.verdict}};
}

unsigned long binomial(unsigned long n, unsigned long k) {
  unsigned long r = 1;
  for (unsigned long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool needs_trials(const std::string& command) {
  return command == "mustafin-fiber" || command == "star-like" || command == "syzygy-check" || command == "fermat";
}

json base_report(const RunConfig& cfg) {
  return {{"schema_version", kReportSchemaVersion},
          {"artifact", {{"name", "mustafin"}, {"version", kArtifactVersion}}},
          {"command", cfg.command},
          {"config", to_json(cfg)}};
}

json run_mustafin_fiber(const RunConfig& cfg, json& timings) {
  std::size_t expected = binomial(cfg.n_plus_1 + 1, 2);
  json trials = json::array();
  std::size_t successes = 0;
  for (std::size_t k = 0; k < cfg.trials; ++k) {
    auto start = Clock::now();
    std::uint64_t seed = trial_seed(cfg.seed, k);
    auto lattice = sample_general_coefficients(cfg.n_plus_1, cfg.p, seed, cfg.bound);
    IdealHandle fiber = special_fiber(mustafin_ideal(lattice), lattice.residue_field());
    auto rep = verify_component_decomposition(fiber, component_catalog(fiber.ring(), cfg.n_plus_1),
                                              ComponentMode::mustafin);
    bool ok = rep.decomposition_holds && rep.component_count == expected;
    successes += ok ? 1 : 0;
    trials.push_back({{"seed", seed},
                      {"matrices", matrices_json(lattice.matrices)},
                      {"fiber_generators", polys_json(fiber.generators())},
                      {"components", component_report_json(rep)},
                      {"expected_component_count", expected},
                      {"success", ok}});
    timings.push_back(since(start));
  }
  double ratio = static_cast<double>(successes) / static_cast<double>(cfg.trials);
  return {{"trials", trials},
          {"successes", successes},
          {"expected_component_count", expected},
          {"verdict", ratio >= cfg.min_success_ratio}};
}

json run_curve_model(const RunConfig& cfg, json& timings) {
  auto start = Clock::now();
  PlaneCurve curve = parse_plane_curve(cfg.curve, Field::prime(cfg.p));
  auto lattice = sample_general_coefficients(cfg.n_plus_1, cfg.p, cfg.seed, cfg.bound);
  IdealHandle model = curve_model_ideal(lattice, curve);
  IdealHandle fiber = special_fiber(model, lattice.residue_field());
  json projections = json::array();
  bool pure = true;
  for (std::size_t i = 1; i <= cfg.n_plus_1; ++i) {
    auto proj = single_projection_model(lattice, curve, i);
    pure = pure && proj.pure_power;
    projections.push_back({{"index", i},
                           {"F_tilde", proj.F_tilde.to_string()},
                           {"pure_power", proj.pure_power},
                           {"coefficient", proj.coefficient.to_string()}});
  }
  timings.push_back(since(start));
  return {{"seed", cfg.seed},
          {"matrices", matrices_json(lattice.matrices)},
          {"model_generator_count", model.generators().size()},
          {"fiber_generators", polys_json(fiber.generators())},
          {"projections", projections},
          {"verdict", pure}};
}

json run_star_like(const RunConfig& cfg, json& timings) {
  PlaneCurve curve = parse_plane_curve(cfg.curve, Field::prime(cfg.p));
  std::vector<std::size_t> u;
  for (const char* name : {"u1", "u2", "u3"}) u.push_back(curve.f.ring()->variable(name));
  bool smooth = !curve.f.involves(uniformizer_index(*curve.f.ring())) && is_smooth_plane_curve(curve.f, u);
  auto exp = star_like_experiment(curve, cfg.n_plus_1, cfg.p, cfg.trials, cfg.seed, cfg.bound, cfg.workers);
  json trials = json::array();
  bool pure_where_star = true;
  for (const auto& t : exp.reports) {
    json coeffs = json::array();
    for (const auto& p : t.projections) coeffs.push_back(p.pure_power ? json(p.coefficient.to_string()) : json(nullptr));
    if (t.star_like && !t.projections_pure) pure_where_star = false;
    trials.push_back({{"seed", t.seed},
                      {"matrices", matrices_json(t.cfg.matrices)},
                      {"star_like", t.star_like},
                      {"projections_pure", t.projections_pure},
                      {"projection_coefficients", coeffs},
                      {"components", component_report_json(t.components)},
                      {"error", t.error}});
    timings.push_back(t.model_ms + t.verify_ms);
  }
  double ratio = exp.ratio();
  return {{"curve_smooth", smooth},
          {"trials", trials},
          {"successes", exp.successes},
          {"verdict", smooth && pure_where_star && ratio >= cfg.min_success_ratio}};
}

json run_syzygy_check(const RunConfig& cfg, json& timings) {
  DegreeData data{cfg.n, cfg.rho, cfg.degrees};
  Field field = Field::prime(cfg.p);
  RingPtr plane = plane_ring(field);
  PlaneCurve curve = parse_plane_curve(cfg.curve, field);
  json trials = json::array();
  bool all = true;
  for (std::size_t k = 0; k < cfg.trials; ++k) {
    auto start = Clock::now();
    std::uint64_t seed = trial_seed(cfg.seed, k);
    auto lattice = sample_general_coefficients(data.n_plus_1(), cfg.p, seed, cfg.bound);
    std::vector<Polynomial> h;
    if (cfg.h.empty()) {
      SplitMix64 rng = SplitMix64(seed).split(1);
      h = random_forms(plane, data, rng, cfg.bound);
    } else {
      for (const auto& text : cfg.h) h.push_back(parse_polynomial(text, plane));
    }
    SyzygyTuple tuple = example_class(data, lattice, h);
    TrivialityCertificate cert = triviality_certificate(tuple, lattice);
    std::vector<Polynomial> lifts;
    for (const auto& l : tuple.lifts) lifts.push_back(l.F);
    json entries = json::array();
    for (const auto& e : tuple.entries) entries.push_back(e.to_string());
    all = all && cert.verdict;
    trials.push_back({{"seed", seed},
                      {"matrices", matrices_json(lattice.matrices)},
                      {"h", polys_json(h)},
                      {"entries", entries},
                      {"lifts", polys_json(lifts)},
                      {"certificate", certificate_json(cert)},
                      {"coverage_on_curve", coverage_check(curve, tuple.entries)}});
    timings.push_back(since(start));
  }
  return {{"trials", trials}, {"verdict", all}};
}

json run_fermat(const RunConfig& cfg, json& timings) {
  auto exp = theorem_bren_pipeline(cfg.d, cfg.p, cfg.trials, cfg.seed, cfg.bound, cfg.workers);
  json trials = json::array();
  for (const auto& t : exp.trials) {
    json squares = json::array();
    for (const auto& s : t.squares.lifts) {
      squares.push_back({{"l", s.l},
                         {"remainder_integral", s.remainder_integral},
                         {"admissible", s.admissible},
                         {"upsilon_matches", s.upsilon_matches}});
    }
    json spoly = json::array();
    for (const auto& s : t.s_poly) {
      spoly.push_back({{"l", s.l},
                       {"integral", s.integral},
                       {"fiber", s.fiber.to_string()},
                       {"fiber_is_power", s.fiber_is_power},
                       {"agrees_with_projection", s.agrees_with_projection}});
    }
    json witnesses = json::array();
    for (const auto& w : t.witnesses) witnesses.push_back(w.to_string());
    std::vector<Matrix3> B(t.fc.B.begin(), t.fc.B.end());
    trials.push_back({{"seed", t.seed},
                      {"M", matrices_json(t.fc.cfg.matrices)},
                      {"B", matrices_json(B)},
                      {"characteristic_ok", t.characteristic_ok},
                      {"base_locus_empty", t.base_locus_empty},
                      {"pullback_identity", t.pullback_identity},
                      {"smooth", t.smooth},
                      {"squares", {{"lifts", squares}, {"verdict", t.squares.verdict}}},
                      {"s_poly", spoly},
                      {"fibers_ok", t.fibers_ok},
                      {"monomial_witnesses", witnesses},
                      {"star_like",
                       {{"star_like", t.star_like.star_like},
                        {"projections_pure", t.star_like.projections_pure},
                        {"components", component_report_json(t.star_like.components)},
                        {"error", t.star_like.error}}},
                      {"certificate", certificate_json(t.certificate)},
                      {"full_witness", t.full_witness},
                      {"error", t.error}});
    json stage_times = json::object();
    for (const auto& [name, ms] : t.timings_ms) stage_times[name] = ms;
    timings.push_back(stage_times);
  }
  return {{"trials", trials},
          {"full_witnesses", exp.full_witnesses()},
          {"note", "finite base change is not modeled; the residue field is a large prime field"},
          {"verdict", exp.verdict()}};
}

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> commands{"mustafin-fiber", "curve-model", "star-like",
                                                 "syzygy-check",   "fermat",      "corpus"};
  return commands;
}

void validate(const RunConfig& cfg) {
  const auto& known = known_commands();
  if (std::find(known.begin(), known.end(), cfg.command) == known.end()) {
    throw InvalidArgumentError("unknown command '" + cfg.command + "'");
  }
  if (cfg.command == "corpus") {
    if (cfg.path.empty()) throw InvalidArgumentError("corpus needs a directory path");
    return;
  }
  if (!is_prime(cfg.p) || cfg.p >= (1u << 31)) {
    throw InvalidArgumentError("p = " + std::to_string(cfg.p) + " is not a prime below 2^31");
  }
  if (cfg.bound == 0) throw InvalidArgumentError("bound must be positive");
  if (needs_trials(cfg.command) && cfg.trials == 0) throw InvalidArgumentError("trials must be at least 1");
  if (cfg.min_success_ratio < 0 || cfg.min_success_ratio > 1) {
    throw InvalidArgumentError("min_success_ratio must lie in [0, 1]");
  }
  if (cfg.command == "mustafin-fiber" || cfg.command == "curve-model" || cfg.command == "star-like") {
    if (cfg.n_plus_1 < 2 || cfg.n_plus_1 > 8) throw InvalidArgumentError("n_plus_1 must lie in [2, 8]");
  }
  if (cfg.command == "curve-model" || cfg.command == "star-like" || cfg.command == "syzygy-check") {
    try {
      parse_plane_curve(cfg.curve, Field::prime(cfg.p));
    } catch (const std::exception& e) {
      throw InvalidArgumentError(std::string("curve: ") + e.what());
    }
  }
  if (cfg.command == "syzygy-check") {
    validate(DegreeData{cfg.n, cfg.rho, cfg.degrees});
    if (!cfg.h.empty() && cfg.h.size() != cfg.degrees.size()) {
      throw InvalidArgumentError("expected " + std::to_string(cfg.degrees.size()) + " forms h, got " +
                                 std::to_string(cfg.h.size()));
    }
  }
  if (cfg.command == "fermat" && cfg.d < 1) throw InvalidArgumentError("d must be at least 1");
}

json to_json(const RunConfig& cfg) {
  return {{"command", cfg.command},
          {"n_plus_1", cfg.n_plus_1},
          {"p", cfg.p},
          {"d", cfg.d},
          {"n", cfg.n},
          {"rho", cfg.rho},
          {"degrees", cfg.degrees},
          {"trials", cfg.trials},
          {"seed", cfg.seed},
          {"bound", cfg.bound},
          {"min_success_ratio", cfg.min_success_ratio},
          {"curve", cfg.curve},
          {"h", cfg.h},
          {"path", cfg.path},
          {"output", cfg.output},
          {"workers", cfg.workers}};
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgumentError("run configuration must be a JSON object");
  RunConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    try {
      if (key == "command") cfg.command = v.get<std::string>();
      else if (key == "n_plus_1") cfg.n_plus_1 = v.get<std::size_t>();
      else if (key == "p" || key == "prime") cfg.p = v.get<std::uint32_t>();
      else if (key == "d") cfg.d = v.get<unsigned>();
      else if (key == "n") cfg.n = v.get<int>();
      else if (key == "rho") cfg.rho = v.get<int>();
      else if (key == "degrees") cfg.degrees = v.get<std::vector<int>>();
      else if (key == "trials") cfg.trials = v.get<std::size_t>();
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "bound") cfg.bound = v.get<std::uint64_t>();
      else if (key == "min_success_ratio") cfg.min_success_ratio = v.get<double>();
      else if (key == "curve") cfg.curve = v.get<std::string>();
      else if (key == "h") cfg.h = v.get<std::vector<std::string>>();
      else if (key == "path") cfg.path = v.get<std::string>();
      else if (key == "output") cfg.output = v.get<std::string>();
      else if (key == "workers") cfg.workers = v.get<unsigned>();
      else throw InvalidArgumentError("unknown field '" + key + "'");
    } catch (const json::exception& e) {
      throw InvalidArgumentError("field '" + key + "': " + e.what());
    }
  }
  return cfg;
}

json dispatch(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.command == "corpus") return corpus_run(cfg.path, cfg.workers);
  json report = base_report(cfg);
  json timings = json::array();
  auto start = Clock::now();
  json result;
  if (cfg.command == "mustafin-fiber") result = run_mustafin_fiber(cfg, timings);
  else if (cfg.command == "curve-model") result = run_curve_model(cfg, timings);
  else if (cfg.command == "star-like") result = run_star_like(cfg, timings);
  else if (cfg.command == "syzygy-check") result = run_syzygy_check(cfg, timings);
  else result = run_fermat(cfg, timings);
  report["verdict"] = result.at("verdict").get<bool>();
  report["result"] = result;
  report["timings_ms"] = {{"total", since(start)}, {"per_trial", timings}};
  return report;
}

json corpus_run(const std::string& path, unsigned workers) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(path, ec)) throw InvalidArgumentError("corpus path '" + path + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

  std::vector<json> entries(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t k = next++; k < files.size(); k = next++) {
      json entry{{"file", files[k].filename().string()}};
      try {
        std::ifstream in(files[k]);
        if (!in) throw InvalidArgumentError("cannot open file");
        std::stringstream buffer;
        buffer << in.rdbuf();
        RunConfig cfg = run_config_from_json(json::parse(buffer.str()));
        if (cfg.command == "corpus") throw InvalidArgumentError("nested corpus runs are not allowed");
        json report = dispatch(cfg);
        entry["status"] = "ok";
        entry["verdict"] = report.at("verdict");
        entry["command"] = cfg.command;
        entry["result"] = report.at("result");
      } catch (const std::exception& e) {
        entry["status"] = "error";
        entry["verdict"] = false;
        entry["error"] = e.what();
      }
      entries[k] = std::move(entry);
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(files.size(), 1))));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  std::size_t passed = 0;
  for (const auto& e : entries) passed += e.at("verdict").get<bool>() ? 1 : 0;
  json report{{"schema_version", kReportSchemaVersion},
              {"artifact", {{"name", "mustafin"}, {"version", kArtifactVersion}}},
              {"command", "corpus"},
              {"config", {{"path", path}}},
              {"entries", entries},
              {"passed", passed},
              {"failed", entries.size() - passed}};
  report["verdict"] = passed == entries.size();
  return report;
}

std::string verdict_section(const json& report) {
  json copy = report;
  copy.erase("timings_ms");
  return copy.dump(2);
}

}  // namespace mustafin
