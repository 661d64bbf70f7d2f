#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "eesampler/config.hpp"
#include "eesampler/estimators.hpp"
#include "eesampler/sampler.hpp"

namespace eesampler {

struct ExperimentResult {
  SamplerKind sampler = SamplerKind::ee;
  double t_top = 1.0;
  std::size_t n_iters = 0;
  AggregateSummary summary;
  std::vector<RunSummary> runs;  // in run-index order
  std::size_t typical_run = 0;   // jump count closest to the mean
};

inline constexpr const char* kSummaryHeader =
    "sampler,t_top,n_iters,mean,std,q05,q95,mse,jump_mean,miss_count";

/// Runs replication `run_index` with its seed derived from the master seed.
SamplerResult run_replication(const TargetModel& target, const ExperimentConfig& cfg,
                              std::size_t run_index);

RunSummary summarize_run(const SamplerResult& run, const TargetModel& target,
                         const ExperimentConfig& cfg);

/// Runs cfg.n_runs replications on cfg.workers threads and writes
/// summary.csv plus any requested per-run files into cfg.output_dir.
/// Throws ConfigError for an invalid config and std::runtime_error when
/// the output directory cannot be written.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// One experiment per top temperature, each in `<output_dir>/<sampler>_tk<T>`,
/// plus a combined table.csv in cfg.output_dir.
std::vector<ExperimentResult> sweep(const ExperimentConfig& cfg, std::span<const double> t_tops);

void write_summary_row(std::ostream& out, const ExperimentResult& result);

/// Per-chain counters: chain,local_attempts,local_accepts,ee_attempts,
/// ee_accepts,empty_ring_fallbacks,exchange_attempts,exchange_accepts.
void write_counters_csv(std::ostream& out, std::span<const ChainCounters> counters);

}  // namespace eesampler
