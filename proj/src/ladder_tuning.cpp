#include "eesampler/ladder_tuning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eesampler/errors.hpp"

namespace eesampler {

namespace {

std::vector<double> fit_tau(const std::vector<double>& tau, std::size_t chains) {
  if (tau.size() == chains) return tau;
  if (tau.empty()) return std::vector<double>(chains, 1.0);
  std::vector<double> out(chains, tau.back());
  out[0] = tau[0];
  return out;
}

}  // namespace

TuneResult tune_ladder(const TargetModel& model, const Ladder& initial, std::size_t pilot_iters,
                       double target_rate, const SamplerConfig& pilot) {
  if (pilot_iters < 1000) throw std::invalid_argument("pilot_iters must be >= 1000");
  if (!(target_rate > 0.0 && target_rate < 1.0))
    throw std::invalid_argument("target_rate must lie in (0, 1)");

  std::vector<double> levels = initial.energy_levels();
  std::vector<double> temps = initial.temperatures();
  std::vector<double> tau = fit_tau(pilot.tau, initial.chain_count());
  if (initial.top() == 0) return {initial, tau, {}, true, 0};

  TuneResult best{initial, tau, {}, false, 0};
  double best_worst_rate = -1.0;

  for (std::size_t round = 0; round < kMaxTuningRounds; ++round) {
    SamplerConfig cfg = pilot;
    cfg.ladder = Ladder(levels, temps);
    cfg.tau = tau;
    cfg.n_iters = pilot_iters;
    cfg.burn_in = pilot_iters / 4;
    cfg.mode = ExecutionMode::serial;
    cfg.keep_chain_traces = false;
    cfg.seed = derive_seed(pilot.seed, round);
    const SamplerResult run = run_ee_serial(model, cfg);

    bool any_stored = false;
    for (std::size_t i = 1; i < run.rings.size(); ++i) {
      for (const auto& occ : run.rings[i].occupancy()) any_stored = any_stored || occ.size > 0;
    }
    if (!any_stored) throw TuningInfeasibleError("pilot run left every ring above chain 0 empty");

    std::vector<double> rates;
    for (std::size_t i = 0; i < cfg.ladder.top(); ++i) rates.push_back(run.counters[i].ee_rate());
    const auto worst = std::min_element(rates.begin(), rates.end());
    const double worst_rate = *worst;

    if (worst_rate > best_worst_rate) {
      best_worst_rate = worst_rate;
      best = {cfg.ladder, tau, rates, false, round + 1};
    }
    if (worst_rate >= target_rate) return {cfg.ladder, tau, rates, true, round + 1};
    if (round + 1 == kMaxTuningRounds) break;

    // New chain between w and w + 1.
    const auto w = static_cast<std::size_t>(worst - rates.begin());
    const double t_new = std::sqrt(temps[w] * temps[w + 1]);
    const double gap = levels[w + 1] - levels[w];
    const double h_new = levels[w] + gap * temps[w] / (temps[w] + t_new);
    const double tau_new = std::sqrt(tau[w] * tau[w + 1]);
    levels.insert(levels.begin() + static_cast<std::ptrdiff_t>(w + 1), h_new);
    temps.insert(temps.begin() + static_cast<std::ptrdiff_t>(w + 1), t_new);
    tau.insert(tau.begin() + static_cast<std::ptrdiff_t>(w + 1), tau_new);
  }
  best.rounds = kMaxTuningRounds;
  return best;
}

}  // namespace eesampler
