#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "eesampler/ladder.hpp"
#include "eesampler/target_model.hpp"
#include "eesampler/trace.hpp"

namespace eesampler {

using StatePredicate = std::function<bool(std::span<const double>)>;
using StateFunction = std::function<double(std::span<const double>)>;

/// Per-replication result.
struct RunSummary {
  double p_hat = 0.0;
  std::size_t jumps = 0;
  bool miss = false;
  std::vector<double> acceptance_rates;  // EE jump (EE) or exchange (PT) per chain
};

/// Table-style statistics over replications.
struct AggregateSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;  // denominator n - 1
  double q05 = 0.0;
  double q95 = 0.0;
  double mse = 0.0;  // denominator n
  double jump_mean = 0.0;
  std::size_t miss_count = 0;
  bool std_defined = true;  // false for a single replicate (std reported as 0)
};

/// Fraction of trace states with ||x|| < radius.
double visit_probability(const Trace& trace, double radius);

/// True if some trace state lies strictly within `radius` of `center`.
bool visits_ball(const Trace& trace, std::span<const double> center, double radius);

/// (1/n) sum_i sum_j w_j 1(X_i in A and h(X_i) in D_j) over the chain-0 trace.
double chen_kim_estimator(const Trace& trace, const Ladder& ladder, const StatePredicate& event,
                          std::span<const double> weights);

/// Estimate of E_pi0[g] from the samples of every chain. Chain i's samples
/// follow pi_i(x) ~ exp(-max(h, H_i) / T_i), so each sample's weight depends
/// only on its energy; the chains' normalizers are solved self-consistently
/// and every sample is reweighted against the pooled mixture of all chains.
/// `chain_traces[i]` holds chain i's recorded states with their energies.
///
/// Throws UndefinedEstimateError when chain 0 has no samples and
/// DegenerateWeightsError if the weights cannot be normalized.
double ee_ring_weighted_estimator(std::span<const Trace> chain_traces, const Ladder& ladder,
                                  const StateFunction& g);

/// Number of changes of basin label along the trace. A state takes the
/// label of the first mode whose basin contains it; states outside every
/// basin are skipped.
std::size_t count_mode_jumps(const Trace& trace, std::span<const Mode> modes);

AggregateSummary aggregate(std::span<const RunSummary> runs, double truth);

/// Nearest-rank empirical quantile, q in (0, 1].
double nearest_rank_quantile(std::vector<double> values, double q);

}  // namespace eesampler
