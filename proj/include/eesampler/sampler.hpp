#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "eesampler/energy_rings.hpp"
#include "eesampler/ladder.hpp"
#include "eesampler/local_kernel.hpp"
#include "eesampler/random.hpp"
#include "eesampler/target_model.hpp"
#include "eesampler/trace.hpp"

namespace eesampler {

enum class ExecutionMode { serial, interleaved };

struct SamplerConfig {
  Ladder ladder = Ladder::single(0.0);
  std::size_t n_iters = 1;  // recorded iterations per chain
  std::size_t burn_in = 0;
  double p_ee = 0.3;
  double p_ex = 0.3;
  std::vector<double> tau{1.0};  // proposal scale per chain
  ExecutionMode mode = ExecutionMode::serial;
  std::uint64_t seed = 0;
  std::optional<std::size_t> ring_capacity;
  EvictionPolicy eviction = EvictionPolicy::replace_random;
  double cross_ring_rho = 0.0;
  double init_scale = 10.0;
  std::shared_ptr<const LocalKernel> kernel;  // Gaussian random walk when null
  bool keep_chain_traces = false;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

struct ChainCounters {
  std::size_t local_attempts = 0;
  std::size_t local_accepts = 0;
  std::size_t ee_attempts = 0;
  std::size_t ee_accepts = 0;
  std::size_t empty_ring_fallbacks = 0;
  std::size_t exchange_attempts = 0;
  std::size_t exchange_accepts = 0;

  bool operator==(const ChainCounters&) const = default;

  /// ee_accepts / ee_attempts, or 0 when no jump was proposed.
  double ee_rate() const noexcept;
};

struct ChainState {
  std::size_t index = 0;
  State x;
  double energy = 0.0;
  ChainCounters counters;
  State scratch;  // proposal buffer
};

struct SamplerResult {
  Trace trace;                      // chain 0 after burn-in, n_iters states
  std::vector<Trace> chain_traces;  // every chain, only with keep_chain_traces
  std::vector<EnergyRings> rings;   // per chain; empty for PT and plain MH
  std::vector<ChainCounters> counters;
};

/// max(e, H_i): chain i sees a flat landscape below its energy floor.
double flattened_energy(double e, std::size_t i, const Ladder& ladder);

/// log of min(1, exp(-(f_y - f_x) / temperature)).
double local_log_acceptance(double f_x, double f_y, double temperature);

/// log acceptance of replacing chain i's state (energy h_x) by a ring record
/// (energy h_y) taken from chain i + 1.
double ee_log_acceptance(double h_x, double h_y, std::size_t i, const Ladder& ladder);

/// log acceptance of swapping states between rungs at t_lo and t_hi.
double exchange_log_acceptance(double h_lo, double h_hi, double t_lo, double t_hi);

/// Random-walk Metropolis step at chain's temperature. With `flatten` the
/// chain targets exp(-max(h, H_i) / T_i), otherwise exp(-h / T_i).
bool local_mh_step(ChainState& chain, const TargetModel& model, const SamplerConfig& cfg,
                   Rng& rng, bool flatten = true);

/// Equi-energy jump for chain i < K using the ring store of chain i + 1.
/// Falls back to a local step when the chosen ring is empty.
bool ee_jump_step(ChainState& chain, const EnergyRings& above, const TargetModel& model,
                  const SamplerConfig& cfg, Rng& rng);

/// Replica exchange between adjacent rungs. Counted on `lo`.
bool pt_exchange_step(ChainState& lo, ChainState& hi, const Ladder& ladder, Rng& rng);

/// Runs chain K to completion, then K-1, ..., then 0.
SamplerResult run_ee_serial(const TargetModel& model, const SamplerConfig& cfg);

/// Lockstep chains; chain i starts once chain i+1 has finished burn-in.
SamplerResult run_ee_interleaved(const TargetModel& model, const SamplerConfig& cfg);

/// Dispatches on cfg.mode.
SamplerResult run_ee(const TargetModel& model, const SamplerConfig& cfg);

/// Parallel tempering on the same ladder temperatures, unflattened energies.
SamplerResult run_pt(const TargetModel& model, const SamplerConfig& cfg);

/// Random-walk Metropolis on the target using chain 0's settings.
SamplerResult run_mh(const TargetModel& model, const SamplerConfig& cfg);

}  // namespace eesampler
