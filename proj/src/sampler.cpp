#include "eesampler/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace eesampler {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

const LocalKernel& kernel_of(const SamplerConfig& cfg) {
  static const GaussianRandomWalk fallback;
  return cfg.kernel ? *cfg.kernel : fallback;
}

bool accept(double log_alpha, Rng& rng) {
  if (log_alpha >= 0.0) return true;
  if (log_alpha == kNegInf) return false;
  return uniform01(rng) < std::exp(log_alpha);
}

ChainState start_chain(std::size_t i, const TargetModel& model, const SamplerConfig& cfg,
                       Rng& rng) {
  ChainState chain;
  chain.index = i;
  chain.x = model.initial_state(rng, cfg.init_scale);
  chain.energy = model.energy(chain.x);
  chain.scratch.resize(chain.x.size());
  return chain;
}

/// One EE-sampler iteration of chain i: a jump with probability p_ee when a
/// ring store above exists, else a local step.
void ee_iteration(ChainState& chain, const EnergyRings* above, const TargetModel& model,
                  const SamplerConfig& cfg, Rng& rng) {
  if (above != nullptr && cfg.p_ee > 0.0 && uniform01(rng) < cfg.p_ee) {
    ee_jump_step(chain, *above, model, cfg, rng);
  } else {
    local_mh_step(chain, model, cfg, rng, true);
  }
}

SamplerResult empty_result(const TargetModel& model, const SamplerConfig& cfg) {
  SamplerResult result;
  result.trace = Trace(model.dimension());
  result.trace.reserve(cfg.n_iters);
  if (cfg.keep_chain_traces) {
    result.chain_traces.assign(cfg.ladder.chain_count(), Trace(model.dimension()));
  }
  return result;
}

}  // namespace

void SamplerConfig::validate() const {
  const std::size_t chains = ladder.chain_count();
  if (n_iters < 1) throw std::invalid_argument("n_iters must be >= 1");
  if (!(p_ee >= 0.0 && p_ee < 1.0)) throw std::invalid_argument("p_ee must lie in [0, 1)");
  if (!(p_ex >= 0.0 && p_ex < 1.0)) throw std::invalid_argument("p_ex must lie in [0, 1)");
  if (tau.size() != chains)
    throw std::invalid_argument("tau needs one entry per chain (" + std::to_string(chains) + ")");
  for (double t : tau) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("tau entries must be > 0");
  }
  if (ring_capacity && *ring_capacity == 0) throw std::invalid_argument("ring_capacity must be > 0");
  if (!(cross_ring_rho >= 0.0 && cross_ring_rho < 1.0))
    throw std::invalid_argument("cross_ring_rho must lie in [0, 1)");
  if (!(init_scale > 0.0)) throw std::invalid_argument("init_scale must be > 0");
}

double ChainCounters::ee_rate() const noexcept {
  return ee_attempts == 0 ? 0.0
                          : static_cast<double>(ee_accepts) / static_cast<double>(ee_attempts);
}

double flattened_energy(double e, std::size_t i, const Ladder& ladder) {
  return std::max(e, ladder.level(i));
}

double local_log_acceptance(double f_x, double f_y, double temperature) {
  return std::min(0.0, -(f_y - f_x) / temperature);
}

double ee_log_acceptance(double h_x, double h_y, std::size_t i, const Ladder& ladder) {
  const double t_i = ladder.temperature(i);
  const double t_up = ladder.temperature(i + 1);
  const double own = flattened_energy(h_y, i, ladder) - flattened_energy(h_x, i, ladder);
  const double up = flattened_energy(h_y, i + 1, ladder) - flattened_energy(h_x, i + 1, ladder);
  return std::min(0.0, -own / t_i + up / t_up);
}

double exchange_log_acceptance(double h_lo, double h_hi, double t_lo, double t_hi) {
  return std::min(0.0, (1.0 / t_lo - 1.0 / t_hi) * (h_lo - h_hi));
}

bool local_mh_step(ChainState& chain, const TargetModel& model, const SamplerConfig& cfg,
                   Rng& rng, bool flatten) {
  const Ladder& ladder = cfg.ladder;
  const std::size_t i = chain.index;
  const double temperature = ladder.temperature(i);
  chain.scratch.resize(chain.x.size());
  kernel_of(cfg).propose(chain.x, cfg.tau[i] * std::sqrt(temperature), rng, chain.scratch);
  ++chain.counters.local_attempts;

  const double h_y = model.energy(chain.scratch);
  const double f_x = flatten ? flattened_energy(chain.energy, i, ladder) : chain.energy;
  const double f_y = flatten ? flattened_energy(h_y, i, ladder) : h_y;
  if (!accept(local_log_acceptance(f_x, f_y, temperature), rng)) return false;

  std::swap(chain.x, chain.scratch);
  chain.energy = h_y;
  ++chain.counters.local_accepts;
  return true;
}

bool ee_jump_step(ChainState& chain, const EnergyRings& above, const TargetModel& model,
                  const SamplerConfig& cfg, Rng& rng) {
  const Ladder& ladder = cfg.ladder;
  const std::size_t i = chain.index;
  if (i >= ladder.top()) throw std::logic_error("the hottest chain has no ring store above it");

  const std::size_t k_max = ladder.top();
  const std::size_t ring = ladder.ring_index(chain.energy);
  const double rho = cfg.cross_ring_rho;
  const std::size_t target_ring = rho > 0.0 ? cross_ring_proposal_index(ring, k_max, rho, rng) : ring;

  const auto proposal = above.sample_uniform(target_ring, rng);
  if (!proposal) {
    ++chain.counters.empty_ring_fallbacks;
    return local_mh_step(chain, model, cfg, rng, true);
  }
  ++chain.counters.ee_attempts;

  double log_alpha = ee_log_acceptance(chain.energy, proposal->energy, i, ladder);
  if (target_ring != ring) {
    // Asymmetric ring choice: q(y -> x) / q(x -> y) with ring masses taken
    // from the store's occupancy.
    const double size_here = static_cast<double>(above.size(ring));
    if (size_here == 0.0) {
      log_alpha = kNegInf;
    } else {
      const double size_there = static_cast<double>(above.size(target_ring));
      log_alpha += std::log(cross_ring_probability(ring, target_ring, k_max, rho)) -
                   std::log(cross_ring_probability(target_ring, ring, k_max, rho)) +
                   std::log(size_there) - std::log(size_here);
      log_alpha = std::min(0.0, log_alpha);
    }
  }
  if (!accept(log_alpha, rng)) return false;

  chain.x.assign(proposal->x.begin(), proposal->x.end());
  chain.energy = proposal->energy;
  ++chain.counters.ee_accepts;
  return true;
}

bool pt_exchange_step(ChainState& lo, ChainState& hi, const Ladder& ladder, Rng& rng) {
  ++lo.counters.exchange_attempts;
  const double log_alpha = exchange_log_acceptance(lo.energy, hi.energy,
                                                   ladder.temperature(lo.index),
                                                   ladder.temperature(hi.index));
  if (!accept(log_alpha, rng)) return false;
  std::swap(lo.x, hi.x);
  std::swap(lo.energy, hi.energy);
  ++lo.counters.exchange_accepts;
  return true;
}

// ---------------------------------------------------------------------------

SamplerResult run_ee_serial(const TargetModel& model, const SamplerConfig& cfg) {
  cfg.validate();
  const std::size_t top = cfg.ladder.top();
  SamplerResult result = empty_result(model, cfg);
  result.rings.assign(top + 1, EnergyRings(cfg.ladder, model.dimension(), cfg.ring_capacity, cfg.eviction));
  result.counters.resize(top + 1);

  const std::size_t total = cfg.burn_in + cfg.n_iters;
  for (std::size_t step = 0; step <= top; ++step) {
    const std::size_t i = top - step;
    Rng rng = make_stream(cfg.seed, i);
    ChainState chain = start_chain(i, model, cfg, rng);
    const EnergyRings* above = i < top ? &result.rings[i + 1] : nullptr;
    for (std::size_t t = 0; t < total; ++t) {
      ee_iteration(chain, above, model, cfg, rng);
      if (t < cfg.burn_in) continue;
      result.rings[i].insert(chain.x, chain.energy, rng);
      if (i == 0) result.trace.push_back(chain.x, chain.energy);
      if (cfg.keep_chain_traces) result.chain_traces[i].push_back(chain.x, chain.energy);
    }
    result.counters[i] = chain.counters;
  }
  return result;
}

SamplerResult run_ee_interleaved(const TargetModel& model, const SamplerConfig& cfg) {
  cfg.validate();
  const std::size_t top = cfg.ladder.top();
  SamplerResult result = empty_result(model, cfg);
  result.rings.assign(top + 1, EnergyRings(cfg.ladder, model.dimension(), cfg.ring_capacity, cfg.eviction));

  std::vector<Rng> rngs;
  std::vector<ChainState> chains;
  for (std::size_t i = 0; i <= top; ++i) rngs.push_back(make_stream(cfg.seed, i));
  // Initialize hottest first, matching the serial driver's draw order per stream.
  chains.resize(top + 1);
  for (std::size_t step = 0; step <= top; ++step) {
    const std::size_t i = top - step;
    chains[i] = start_chain(i, model, cfg, rngs[i]);
  }

  const std::size_t per_chain = cfg.burn_in + cfg.n_iters;
  const std::size_t horizon = top * cfg.burn_in + per_chain;
  for (std::size_t g = 0; g < horizon; ++g) {
    for (std::size_t step = 0; step <= top; ++step) {
      const std::size_t i = top - step;
      const std::size_t start = (top - i) * cfg.burn_in;
      if (g < start || g - start >= per_chain) continue;
      const std::size_t t = g - start;
      const EnergyRings* above = i < top ? &result.rings[i + 1] : nullptr;
      ee_iteration(chains[i], above, model, cfg, rngs[i]);
      if (t < cfg.burn_in) continue;
      result.rings[i].insert(chains[i].x, chains[i].energy, rngs[i]);
      if (i == 0) result.trace.push_back(chains[i].x, chains[i].energy);
      if (cfg.keep_chain_traces) result.chain_traces[i].push_back(chains[i].x, chains[i].energy);
    }
  }
  for (const auto& c : chains) result.counters.push_back(c.counters);
  return result;
}

SamplerResult run_ee(const TargetModel& model, const SamplerConfig& cfg) {
  return cfg.mode == ExecutionMode::serial ? run_ee_serial(model, cfg)
                                           : run_ee_interleaved(model, cfg);
}

SamplerResult run_pt(const TargetModel& model, const SamplerConfig& cfg) {
  cfg.validate();
  const std::size_t top = cfg.ladder.top();
  SamplerResult result = empty_result(model, cfg);

  std::vector<Rng> rngs;
  std::vector<ChainState> chains;
  for (std::size_t i = 0; i <= top; ++i) {
    rngs.push_back(make_stream(cfg.seed, i));
    chains.push_back(start_chain(i, model, cfg, rngs.back()));
  }
  Rng control = make_stream(cfg.seed, top + 1);
  std::uniform_int_distribution<std::size_t> pick_pair(0, top == 0 ? 0 : top - 1);

  const std::size_t total = cfg.burn_in + cfg.n_iters;
  for (std::size_t t = 0; t < total; ++t) {
    if (top > 0 && cfg.p_ex > 0.0 && uniform01(control) < cfg.p_ex) {
      const std::size_t j = pick_pair(control);
      pt_exchange_step(chains[j], chains[j + 1], cfg.ladder, control);
    } else {
      for (std::size_t i = 0; i <= top; ++i) local_mh_step(chains[i], model, cfg, rngs[i], false);
    }
    if (t < cfg.burn_in) continue;
    result.trace.push_back(chains[0].x, chains[0].energy);
    if (cfg.keep_chain_traces) {
      for (std::size_t i = 0; i <= top; ++i) result.chain_traces[i].push_back(chains[i].x, chains[i].energy);
    }
  }
  for (const auto& c : chains) result.counters.push_back(c.counters);
  return result;
}

SamplerResult run_mh(const TargetModel& model, const SamplerConfig& cfg) {
  cfg.validate();
  SamplerResult result;
  result.trace = Trace(model.dimension());
  result.trace.reserve(cfg.n_iters);
  if (cfg.keep_chain_traces) result.chain_traces.assign(1, Trace(model.dimension()));

  Rng rng = make_stream(cfg.seed, 0);
  ChainState chain = start_chain(0, model, cfg, rng);
  const std::size_t total = cfg.burn_in + cfg.n_iters;
  for (std::size_t t = 0; t < total; ++t) {
    local_mh_step(chain, model, cfg, rng, false);
    if (t < cfg.burn_in) continue;
    result.trace.push_back(chain.x, chain.energy);
    if (cfg.keep_chain_traces) result.chain_traces[0].push_back(chain.x, chain.energy);
  }
  result.counters.push_back(chain.counters);
  return result;
}

}  // namespace eesampler
