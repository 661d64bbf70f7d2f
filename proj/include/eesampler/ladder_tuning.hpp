#pragma once

#include <cstddef>
#include <vector>

#include "eesampler/ladder.hpp"
#include "eesampler/sampler.hpp"
#include "eesampler/target_model.hpp"

namespace eesampler {

struct TuneResult {
  Ladder ladder;
  std::vector<double> tau;       // proposal scales matching `ladder`
  std::vector<double> ee_rates;  // measured EE acceptance of chains 0..K-1
  bool tuned = false;            // every rate reached the target
  std::size_t rounds = 0;        // pilot runs performed
};

inline constexpr std::size_t kMaxTuningRounds = 5;

/// Pilot-run ladder tuning. While some chain's equi-energy acceptance is
/// below `target_rate`, a chain is inserted between the worst chain and the
/// one above it (temperature and proposal scale at their geometric means,
/// the energy gap split in proportion to the two temperatures) and the pilot
/// is repeated, up to kMaxTuningRounds pilots. `pilot` supplies p_ee, tau,
/// the seed and the kernel; its ladder, n_iters and burn_in are replaced.
///
/// Throws TuningInfeasibleError if a pilot leaves every ring store above
/// chain 0 empty.
TuneResult tune_ladder(const TargetModel& model, const Ladder& initial, std::size_t pilot_iters,
                       double target_rate, const SamplerConfig& pilot = {});

}  // namespace eesampler
