#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mustafin/errors.hpp"
#include "mustafin/report.hpp"

namespace {

void add_common(CLI::App* sub, mustafin::RunConfig& cfg) {
  sub->add_option("--prime,-p", cfg.p, "residue characteristic (prime)")->capture_default_str();
  sub->add_option("--seed", cfg.seed, "base seed; trial k uses a split stream")->capture_default_str();
  sub->add_option("--bound", cfg.bound, "coefficients are drawn from [0, bound)")->capture_default_str();
  sub->add_option("--report,-o", cfg.output, "write the JSON report here instead of stdout");
}

void add_trials(CLI::App* sub, mustafin::RunConfig& cfg) {
  sub->add_option("--trials", cfg.trials, "number of seeded trials")->capture_default_str();
  sub->add_option("--workers", cfg.workers, "worker threads for independent trials")->capture_default_str();
}

void add_lattices(CLI::App* sub, mustafin::RunConfig& cfg) {
  sub->add_option("--n,--n-plus-1", cfg.n_plus_1, "number of lattices n+1")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mustafin models, star-like reduction and syzygy bundle certificates"};
  app.require_subcommand(1);
  mustafin::RunConfig cfg;

  auto* fiber = app.add_subcommand("mustafin-fiber", "special fiber of the Mustafin ideal against the catalog");
  add_common(fiber, cfg);
  add_trials(fiber, cfg);
  add_lattices(fiber, cfg);
  fiber->add_option("--min-ratio", cfg.min_success_ratio, "required success ratio")->capture_default_str();

  auto* curve_model = app.add_subcommand("curve-model", "closure of a plane curve in the Mustafin model");
  add_common(curve_model, cfg);
  add_lattices(curve_model, cfg);
  curve_model->add_option("--curve", cfg.curve, "homogeneous f(u1, u2, u3)")->capture_default_str();

  auto* star = app.add_subcommand("star-like", "star-like reduction experiment");
  add_common(star, cfg);
  add_trials(star, cfg);
  add_lattices(star, cfg);
  star->add_option("--curve", cfg.curve, "homogeneous f(u1, u2, u3)")->capture_default_str();
  star->add_option("--min-ratio", cfg.min_success_ratio, "required success ratio")->capture_default_str();

  auto* syz = app.add_subcommand("syzygy-check", "triviality certificate for an example tuple");
  add_common(syz, cfg);
  add_trials(syz, cfg);
  syz->add_option("--n", cfg.n, "n (n+1 lattices)")->capture_default_str();
  syz->add_option("--rho", cfg.rho, "rho")->capture_default_str();
  syz->add_option("--degrees", cfg.degrees, "d_1,...,d_{n+1}")->delimiter(',')->required();
  syz->add_option("--form", cfg.h, "forms h_i in x1, x2, x3 (random when omitted)");
  syz->add_option("--curve", cfg.curve, "curve for the coverage check")->capture_default_str();

  auto* fermat = app.add_subcommand("fermat", "covering of the Fermat curve and all stage checks");
  add_common(fermat, cfg);
  add_trials(fermat, cfg);
  fermat->add_option("--d", cfg.d, "Fermat degree")->capture_default_str();

  auto* corpus = app.add_subcommand("corpus", "run every configuration file of a directory");
  corpus->add_option("path", cfg.path, "directory of JSON run configurations")->required();
  corpus->add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
  corpus->add_option("--report,-o", cfg.output, "write the JSON report here instead of stdout");

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    mustafin::validate(cfg);
  } catch (const mustafin::InvalidArgumentError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  }

  nlohmann::json report;
  try {
    report = mustafin::dispatch(cfg);
  } catch (const mustafin::StepLimitError& e) {
    std::cerr << "step limit reached: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  bool verdict = report.at("verdict").get<bool>();
  if (cfg.output.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(cfg.output);
    if (!out) {
      std::cerr << "cannot write " << cfg.output << "\n";
      return 1;
    }
    out << report.dump(2) << "\n";
  }
  std::cerr << cfg.command << ": verdict " << (verdict ? "true" : "false") << "\n";
  return verdict ? EXIT_SUCCESS : EXIT_FAILURE;
}
