#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eesampler/ladder.hpp"
#include "eesampler/sampler.hpp"
#include "eesampler/target_model.hpp"

namespace eesampler {

enum class SamplerKind { ee, pt, mh };
enum class LadderMode { geometric, coupled, explicit_lists };

struct LadderSpec {
  LadderMode mode = LadderMode::geometric;
  std::size_t k = 3;
  std::optional<double> h_min;  // default: lowest energy at the component means
  double h1 = 3.13;
  std::optional<double> h_top;  // default: h_min + 100
  double ratio = 3.578;
  double t_top = 30.0;
  double coupling = 1.0;             // coupled mode: (H_{i+1} - H_i) / T_i
  std::vector<double> energy_levels;  // explicit mode
  std::vector<double> temperatures;   // explicit mode
};

struct EmitFlags {
  bool trace = false;
  bool counters = false;
  bool rings = false;
  bool scatter = false;
};

/// Everything needed to run a benchmark. Defaults reproduce the needle
/// benchmark with the EE sampler at T_K = 30.
struct ExperimentConfig {
  std::string preset = "needle";  // cleared when explicit components are given
  std::vector<MixtureComponent> components;
  SamplerKind sampler = SamplerKind::ee;
  LadderSpec ladder;
  std::size_t n_iters = 200000;
  std::optional<std::size_t> burn_in;  // default: n_iters / 4
  std::size_t n_runs = 100;
  std::uint64_t master_seed = 20060801;
  double tau0 = 0.05;  // proposal scale of chain 0
  double tau = 1.0;    // proposal scale of chains 1..K
  double p_ee = 0.3;
  double p_ex = 0.3;
  ExecutionMode mode = ExecutionMode::serial;
  std::optional<std::size_t> ring_capacity;
  EvictionPolicy eviction = EvictionPolicy::replace_random;
  double cross_ring_rho = 0.0;
  double init_scale = 10.0;
  double visit_radius = 0.05;
  double truth = 0.5;
  std::size_t workers = 1;
  std::filesystem::path output_dir = "out";
  EmitFlags emit;

  std::size_t effective_burn_in() const { return burn_in.value_or(n_iters / 4); }
};

/// Applies one `key = value` setting. Throws ConfigError naming the key.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Parses the flat key = value format; `[component]` starts a mixture
/// component block with keys weight, mean, variance. Lines starting with
/// '#' are comments.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/// Throws ConfigError on the first invalid key.
void validate(const ExperimentConfig& cfg);

std::shared_ptr<const TargetModel> build_target(const ExperimentConfig& cfg);
Ladder build_ladder(const ExperimentConfig& cfg, const TargetModel& target);
SamplerConfig build_sampler_config(const ExperimentConfig& cfg, const TargetModel& target,
                                   std::uint64_t seed);

std::string_view to_string(SamplerKind kind);

}  // namespace eesampler
