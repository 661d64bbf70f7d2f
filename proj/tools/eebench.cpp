// eebench: equi-energy / parallel-tempering benchmark driver.
//
//   eebench run   [--config FILE] [overrides...]
//   eebench sweep [--config FILE] --tk-list 10,20,30,50,100 [overrides...]
//   eebench tune  [--config FILE] [--pilot-iters N] [--target-rate R]
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "eesampler/config.hpp"
#include "eesampler/errors.hpp"
#include "eesampler/experiment.hpp"
#include "eesampler/ladder_tuning.hpp"

namespace {

using namespace eesampler;

struct Overrides {
  std::string config_path;
  std::optional<std::string> sampler;
  std::optional<std::string> preset;
  std::optional<std::string> mode;
  std::optional<double> tk;
  std::optional<std::size_t> iters;
  std::optional<std::size_t> burnin;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> out;
  std::vector<std::string> emit;
  std::vector<std::string> set;  // raw key=value

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "Experiment config file");
    app->add_option("--sampler", sampler, "ee, pt or mh");
    app->add_option("--preset", preset, "Target preset (needle)");
    app->add_option("--mode", mode, "serial or interleaved");
    app->add_option("--tk", tk, "Highest temperature T_K");
    app->add_option("--iters", iters, "Recorded iterations per chain");
    app->add_option("--burnin", burnin, "Burn-in iterations per chain");
    app->add_option("--runs", runs, "Independent replications");
    app->add_option("--seed", seed, "Master seed");
    app->add_option("--workers", workers, "Worker threads");
    app->add_option("--out", out, "Output directory");
    app->add_option("--emit", emit, "Extra outputs: trace, counters, rings, scatter");
    app->add_option("--set", set, "Any config key as key=value");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    auto put = [&](const char* key, const std::string& value) { apply_setting(cfg, key, value); };
    if (preset) put("target", *preset);
    if (sampler) put("sampler", *sampler);
    if (mode) put("mode", *mode);
    if (tk) cfg.ladder.t_top = *tk;
    if (iters) cfg.n_iters = *iters;
    if (burnin) cfg.burn_in = *burnin;
    if (runs) cfg.n_runs = *runs;
    if (seed) cfg.master_seed = *seed;
    if (workers) cfg.workers = *workers;
    if (out) cfg.output_dir = *out;
    for (const auto& e : emit) put("emit", e);
    for (const auto& kv : set) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError(kv, "--set expects key=value");
      apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
  }
};

void print_table(const std::vector<ExperimentResult>& results) {
  std::cout << kSummaryHeader << '\n';
  for (const auto& r : results) write_summary_row(std::cout, r);
}

std::vector<double> parse_tk_list(const std::string& text) {
  ExperimentConfig scratch;
  apply_setting(scratch, "energy_levels", text);  // reuse the list parser
  return scratch.ladder.energy_levels;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equi-energy sampler benchmark"};
  app.require_subcommand(1);

  Overrides run_opts;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment");
  run_opts.attach(run_cmd);

  Overrides sweep_opts;
  std::string tk_list = "10,20,30,50,100";
  auto* sweep_cmd = app.add_subcommand("sweep", "Run one experiment per top temperature");
  sweep_opts.attach(sweep_cmd);
  sweep_cmd->add_option("--tk-list", tk_list, "Comma-separated top temperatures");

  Overrides tune_opts;
  std::size_t pilot_iters = 20000;
  double target_rate = 0.7;
  auto* tune_cmd = app.add_subcommand("tune", "Pilot-tune the ladder for EE acceptance");
  tune_opts.attach(tune_cmd);
  tune_cmd->add_option("--pilot-iters", pilot_iters, "Iterations per pilot run");
  tune_cmd->add_option("--target-rate", target_rate, "Minimum EE acceptance per chain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      const ExperimentConfig cfg = run_opts.resolve();
      const auto result = run_experiment(cfg);
      if (!result.summary.std_defined)
        std::cerr << "warning: a single replicate has no sample variance; std reported as 0\n";
      print_table({result});
    } else if (sweep_cmd->parsed()) {
      const ExperimentConfig cfg = sweep_opts.resolve();
      const auto t_tops = parse_tk_list(tk_list);
      print_table(sweep(cfg, t_tops));
    } else if (tune_cmd->parsed()) {
      const ExperimentConfig cfg = tune_opts.resolve();
      validate(cfg);
      const auto target = build_target(cfg);
      const SamplerConfig pilot = build_sampler_config(cfg, *target, cfg.master_seed);
      const TuneResult tuned = tune_ladder(*target, pilot.ladder, pilot_iters, target_rate, pilot);
      std::cout << std::setprecision(6);
      std::cout << "tuned=" << (tuned.tuned ? "yes" : "no") << " rounds=" << tuned.rounds << '\n';
      std::cout << "chain,energy_level,temperature,tau,ee_rate\n";
      for (std::size_t i = 0; i < tuned.ladder.chain_count(); ++i) {
        std::cout << i << ',' << tuned.ladder.level(i) << ',' << tuned.ladder.temperature(i) << ','
                  << tuned.tau[i] << ',';
        if (i < tuned.ee_rates.size()) std::cout << tuned.ee_rates[i];
        std::cout << '\n';
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
