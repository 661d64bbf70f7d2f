#include "eesampler/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "eesampler/csv.hpp"
#include "eesampler/errors.hpp"

namespace eesampler {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void prepare_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw std::runtime_error("cannot create output directory " + dir.string());
}

std::string run_prefix(std::size_t run_index) { return "run_" + std::to_string(run_index) + "_"; }

void emit_run_files(const SamplerResult& run, const ExperimentConfig& cfg, std::size_t run_index) {
  const fs::path& dir = cfg.output_dir;
  const std::string prefix = run_prefix(run_index);
  if (cfg.emit.trace) run.trace.write_csv(dir / (prefix + "trace.csv"));
  if (cfg.emit.counters) {
    auto out = open_output(dir / (prefix + "counters.csv"));
    write_counters_csv(out, run.counters);
  }
  if (cfg.emit.rings) {
    for (std::size_t i = 0; i < run.rings.size(); ++i)
      run.rings[i].write_csv(dir, prefix + "chain_" + std::to_string(i) + "_");
  }
}

void emit_scatter(const SamplerResult& run, const ExperimentConfig& cfg) {
  auto all = open_output(cfg.output_dir / "scatter_all.csv");
  auto near = open_output(cfg.output_dir / "scatter_origin.csv");
  const Trace& trace = run.trace;
  csv::write_coord_header(all, trace.dimension(), true);
  csv::write_coord_header(near, trace.dimension(), true);
  const double r2 = cfg.visit_radius * cfg.visit_radius;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto x = trace.point(i);
    csv::write_row(all, i, x, trace.energy(i));
    double sq = 0.0;
    for (double v : x) sq += v * v;
    if (sq < r2) csv::write_row(near, i, x, trace.energy(i));
  }
}

double top_temperature(const ExperimentConfig& cfg, const TargetModel& target) {
  return build_ladder(cfg, target).temperatures().back();
}

}  // namespace

SamplerResult run_replication(const TargetModel& target, const ExperimentConfig& cfg,
                              std::size_t run_index) {
  const SamplerConfig sc = build_sampler_config(cfg, target, derive_seed(cfg.master_seed, run_index));
  switch (cfg.sampler) {
    case SamplerKind::ee: return run_ee(target, sc);
    case SamplerKind::pt: return run_pt(target, sc);
    case SamplerKind::mh: return run_mh(target, sc);
  }
  throw std::logic_error("unknown sampler");
}

RunSummary summarize_run(const SamplerResult& run, const TargetModel& target,
                         const ExperimentConfig& cfg) {
  RunSummary s;
  s.p_hat = visit_probability(run.trace, cfg.visit_radius);
  if (!target.modes().empty()) s.jumps = count_mode_jumps(run.trace, target.modes());
  const State origin(target.dimension(), 0.0);
  s.miss = !visits_ball(run.trace, origin, cfg.visit_radius);
  for (std::size_t i = 0; i + 1 < run.counters.size(); ++i) {
    const auto& c = run.counters[i];
    if (cfg.sampler == SamplerKind::pt) {
      s.acceptance_rates.push_back(
          c.exchange_attempts == 0 ? 0.0
                                   : static_cast<double>(c.exchange_accepts) /
                                         static_cast<double>(c.exchange_attempts));
    } else {
      s.acceptance_rates.push_back(c.ee_rate());
    }
  }
  return s;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  prepare_directory(cfg.output_dir);
  const auto target = build_target(cfg);

  ExperimentResult result;
  result.sampler = cfg.sampler;
  result.t_top = top_temperature(cfg, *target);
  result.n_iters = cfg.n_iters;
  result.runs.resize(cfg.n_runs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= cfg.n_runs) return;
      try {
        const SamplerResult run = run_replication(*target, cfg, r);
        result.runs[r] = summarize_run(run, *target, cfg);
        emit_run_files(run, cfg, r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(cfg.n_runs);
        return;
      }
    }
  };
  const std::size_t n_threads = std::min(cfg.workers, cfg.n_runs);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  result.summary = aggregate(result.runs, cfg.truth);

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < result.runs.size(); ++r) {
    const double gap = std::abs(static_cast<double>(result.runs[r].jumps) - result.summary.jump_mean);
    if (gap < best) {
      best = gap;
      result.typical_run = r;
    }
  }
  if (cfg.emit.scatter) emit_scatter(run_replication(*target, cfg, result.typical_run), cfg);

  auto out = open_output(cfg.output_dir / "summary.csv");
  out << kSummaryHeader << '\n';
  write_summary_row(out, result);
  return result;
}

std::vector<ExperimentResult> sweep(const ExperimentConfig& cfg, std::span<const double> t_tops) {
  if (t_tops.empty()) throw ConfigError("t_top", "sweep needs at least one top temperature");
  prepare_directory(cfg.output_dir);
  std::vector<ExperimentResult> results;
  for (double t_top : t_tops) {
    ExperimentConfig one = cfg;
    one.ladder.t_top = t_top;
    one.output_dir = cfg.output_dir / (std::string(to_string(cfg.sampler)) + "_tk" + csv::format_number(t_top));
    results.push_back(run_experiment(one));
  }
  auto out = open_output(cfg.output_dir / "table.csv");
  out << kSummaryHeader << '\n';
  for (const auto& r : results) write_summary_row(out, r);
  return results;
}

void write_summary_row(std::ostream& out, const ExperimentResult& result) {
  const auto& s = result.summary;
  using csv::format_number;
  out << to_string(result.sampler) << ',' << format_number(result.t_top) << ',' << result.n_iters
      << ',' << format_number(s.mean) << ',' << format_number(s.std) << ','
      << format_number(s.q05) << ',' << format_number(s.q95) << ',' << format_number(s.mse) << ','
      << format_number(s.jump_mean) << ',' << s.miss_count << '\n';
}

void write_counters_csv(std::ostream& out, std::span<const ChainCounters> counters) {
  out << "chain,local_attempts,local_accepts,ee_attempts,ee_accepts,empty_ring_fallbacks,"
         "exchange_attempts,exchange_accepts\n";
  for (std::size_t i = 0; i < counters.size(); ++i) {
    const auto& c = counters[i];
    out << i << ',' << c.local_attempts << ',' << c.local_accepts << ',' << c.ee_attempts << ','
        << c.ee_accepts << ',' << c.empty_ring_fallbacks << ',' << c.exchange_attempts << ','
        << c.exchange_accepts << '\n';
  }
}

}  // namespace eesampler
