#include "eesampler/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "eesampler/errors.hpp"

namespace eesampler {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
  return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError(std::string(key),
                      "expected a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(parse_double(key, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void apply_emit(ExperimentConfig& cfg, std::string_view value) {
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    const auto item = trim(value.substr(start, comma == std::string_view::npos ? value.npos : comma - start));
    if (item == "trace") cfg.emit.trace = true;
    else if (item == "counters") cfg.emit.counters = true;
    else if (item == "rings") cfg.emit.rings = true;
    else if (item == "scatter") cfg.emit.scatter = true;
    else if (item == "none") cfg.emit = {};
    else if (!item.empty())
      throw ConfigError("emit", "unknown output '" + std::string(item) +
                                    "' (expected trace, counters, rings, scatter or none)");
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
}

}  // namespace

std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::ee: return "ee";
    case SamplerKind::pt: return "pt";
    case SamplerKind::mh: return "mh";
  }
  return "?";
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  const std::string k(key);
  auto& lad = cfg.ladder;

  if (key == "target" || key == "preset") {
    if (value != "needle") throw ConfigError(k, "unknown preset '" + std::string(value) + "'");
    cfg.preset = std::string(value);
    cfg.components.clear();
  } else if (key == "sampler") {
    if (value == "ee") cfg.sampler = SamplerKind::ee;
    else if (value == "pt") cfg.sampler = SamplerKind::pt;
    else if (value == "mh") cfg.sampler = SamplerKind::mh;
    else throw ConfigError(k, "expected ee, pt or mh");
  } else if (key == "ladder_mode") {
    if (value == "geometric") lad.mode = LadderMode::geometric;
    else if (value == "coupled") lad.mode = LadderMode::coupled;
    else if (value == "explicit") lad.mode = LadderMode::explicit_lists;
    else throw ConfigError(k, "expected geometric, coupled or explicit");
  } else if (key == "k") {
    lad.k = parse_unsigned(key, value);
  } else if (key == "h_min") {
    lad.h_min = parse_double(key, value);
  } else if (key == "h1") {
    lad.h1 = parse_double(key, value);
  } else if (key == "h_top") {
    lad.h_top = parse_double(key, value);
  } else if (key == "ratio") {
    lad.ratio = parse_double(key, value);
  } else if (key == "t_top") {
    lad.t_top = parse_double(key, value);
  } else if (key == "coupling") {
    lad.coupling = parse_double(key, value);
  } else if (key == "energy_levels") {
    lad.energy_levels = parse_list(key, value);
  } else if (key == "temperatures") {
    lad.temperatures = parse_list(key, value);
  } else if (key == "n_iters") {
    cfg.n_iters = parse_unsigned(key, value);
  } else if (key == "burn_in") {
    cfg.burn_in = parse_unsigned(key, value);
  } else if (key == "n_runs") {
    cfg.n_runs = parse_unsigned(key, value);
  } else if (key == "seed") {
    cfg.master_seed = parse_unsigned(key, value);
  } else if (key == "tau0") {
    cfg.tau0 = parse_double(key, value);
  } else if (key == "tau") {
    cfg.tau = parse_double(key, value);
  } else if (key == "p_ee") {
    cfg.p_ee = parse_double(key, value);
  } else if (key == "p_ex") {
    cfg.p_ex = parse_double(key, value);
  } else if (key == "mode") {
    if (value == "serial") cfg.mode = ExecutionMode::serial;
    else if (value == "interleaved") cfg.mode = ExecutionMode::interleaved;
    else throw ConfigError(k, "expected serial or interleaved");
  } else if (key == "ring_capacity") {
    if (value == "unbounded") cfg.ring_capacity.reset();
    else cfg.ring_capacity = parse_unsigned(key, value);
  } else if (key == "ring_eviction") {
    if (value == "random") cfg.eviction = EvictionPolicy::replace_random;
    else if (value == "reservoir") cfg.eviction = EvictionPolicy::reservoir;
    else throw ConfigError(k, "expected random or reservoir");
  } else if (key == "cross_ring_rho") {
    cfg.cross_ring_rho = parse_double(key, value);
  } else if (key == "init_scale") {
    cfg.init_scale = parse_double(key, value);
  } else if (key == "visit_radius") {
    cfg.visit_radius = parse_double(key, value);
  } else if (key == "truth") {
    cfg.truth = parse_double(key, value);
  } else if (key == "workers") {
    cfg.workers = parse_unsigned(key, value);
  } else if (key == "output_dir") {
    cfg.output_dir = std::string(value);
  } else if (key == "emit") {
    apply_emit(cfg, value);
  } else {
    throw ConfigError(k, "unknown key");
  }
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  ExperimentConfig cfg = std::move(base);
  std::string raw;
  std::size_t line_no = 0;
  bool in_component = false;
  bool saw_component = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line != "[component]")
        throw ConfigError(std::string(line), "unknown section on line " + std::to_string(line_no));
      if (!saw_component) {
        cfg.components.clear();
        cfg.preset.clear();
        saw_component = true;
      }
      cfg.components.push_back({1.0, {}, 1.0});
      in_component = true;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    if (in_component && (key == "weight" || key == "mean" || key == "variance")) {
      auto& c = cfg.components.back();
      if (key == "weight") c.weight = parse_double(key, value);
      else if (key == "mean") c.mean = parse_list(key, value);
      else c.variance = parse_double(key, value);
      continue;
    }
    in_component = false;
    apply_setting(cfg, key, value);
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  return parse_config(in, std::move(base));
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.preset.empty() && cfg.components.empty())
    throw ConfigError("target", "no preset and no [component] blocks");
  if (cfg.n_runs < 1) throw ConfigError("n_runs", "must be >= 1");
  if (cfg.n_iters < 1) throw ConfigError("n_iters", "must be >= 1");
  if (!(cfg.tau0 > 0.0)) throw ConfigError("tau0", "must be > 0");
  if (!(cfg.tau > 0.0)) throw ConfigError("tau", "must be > 0");
  if (!(cfg.p_ee >= 0.0 && cfg.p_ee < 1.0)) throw ConfigError("p_ee", "must lie in [0, 1)");
  if (!(cfg.p_ex >= 0.0 && cfg.p_ex < 1.0)) throw ConfigError("p_ex", "must lie in [0, 1)");
  if (!(cfg.cross_ring_rho >= 0.0 && cfg.cross_ring_rho < 1.0))
    throw ConfigError("cross_ring_rho", "must lie in [0, 1)");
  if (cfg.ring_capacity && *cfg.ring_capacity == 0) throw ConfigError("ring_capacity", "must be > 0");
  if (!(cfg.init_scale > 0.0)) throw ConfigError("init_scale", "must be > 0");
  if (!(cfg.visit_radius > 0.0)) throw ConfigError("visit_radius", "must be > 0");
  if (!(cfg.truth >= 0.0 && cfg.truth <= 1.0)) throw ConfigError("truth", "must lie in [0, 1]");
  if (cfg.workers < 1) throw ConfigError("workers", "must be >= 1");
  if (cfg.ladder.mode == LadderMode::explicit_lists) {
    if (cfg.ladder.energy_levels.empty()) throw ConfigError("energy_levels", "required in explicit mode");
    if (cfg.ladder.energy_levels.size() != cfg.ladder.temperatures.size())
      throw ConfigError("temperatures", "needs one entry per energy level");
  }
  // Building the target and ladder surfaces the remaining errors with their keys.
  const auto target = build_target(cfg);
  const Ladder ladder = build_ladder(cfg, *target);
  (void)ladder;
}

std::shared_ptr<const TargetModel> build_target(const ExperimentConfig& cfg) {
  if (cfg.components.empty()) {
    if (cfg.preset == "needle") return std::make_shared<GaussianMixture>(make_needle_target());
    throw ConfigError("target", "unknown preset '" + cfg.preset + "'");
  }
  try {
    return std::make_shared<GaussianMixture>(cfg.components);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("component", e.what());
  }
}

Ladder build_ladder(const ExperimentConfig& cfg, const TargetModel& target) {
  const auto& spec = cfg.ladder;
  try {
    if (spec.mode == LadderMode::explicit_lists) return Ladder(spec.energy_levels, spec.temperatures);

    double h_min = 0.0;
    if (spec.h_min) {
      h_min = *spec.h_min;
    } else if (const auto* mix = dynamic_cast<const GaussianMixture*>(&target)) {
      h_min = mix->min_energy_at_means();
    } else {
      throw ConfigError("h_min", "required for this target");
    }
    if (spec.k == 0) return Ladder::single(h_min);
    const double h_top = spec.h_top.value_or(h_min + 100.0);
    auto levels = geometric_energy_ladder(h_min, spec.h1, h_top, spec.k, spec.ratio);
    if (spec.mode == LadderMode::coupled) return Ladder(levels, coupled_temperatures(levels, spec.coupling));
    return Ladder(std::move(levels), log_uniform_temperatures(spec.t_top, spec.k));
  } catch (const InvalidLadderError& e) {
    throw ConfigError("ladder", e.what());
  }
}

SamplerConfig build_sampler_config(const ExperimentConfig& cfg, const TargetModel& target,
                                   std::uint64_t seed) {
  SamplerConfig sc;
  sc.ladder = build_ladder(cfg, target);
  sc.n_iters = cfg.n_iters;
  sc.burn_in = cfg.effective_burn_in();
  sc.p_ee = cfg.p_ee;
  sc.p_ex = cfg.p_ex;
  sc.tau.assign(sc.ladder.chain_count(), cfg.tau);
  sc.tau[0] = cfg.tau0;
  sc.mode = cfg.mode;
  sc.seed = seed;
  sc.ring_capacity = cfg.ring_capacity;
  sc.eviction = cfg.eviction;
  sc.cross_ring_rho = cfg.cross_ring_rho;
  sc.init_scale = cfg.init_scale;
  return sc;
}

}  // namespace eesampler
