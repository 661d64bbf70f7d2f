#include "eesampler/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "eesampler/errors.hpp"

namespace eesampler {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return s;
}


}  // namespace

double visit_probability(const Trace& trace, double radius) {
  if (trace.empty()) throw UndefinedEstimateError("visit probability of an empty trace");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  const double r2 = radius * radius;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) hits += squared_norm(trace.point(i)) < r2;
  return static_cast<double>(hits) / static_cast<double>(trace.size());
}

bool visits_ball(const Trace& trace, std::span<const double> center, double radius) {
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (squared_distance(trace.point(i), center) < r2) return true;
  }
  return false;
}

double chen_kim_estimator(const Trace& trace, const Ladder& ladder, const StatePredicate& event,
                          std::span<const double> weights) {
  if (weights.size() != ladder.chain_count())
    throw std::invalid_argument("need one weight per ring");
  if (trace.empty()) throw UndefinedEstimateError("Chen-Kim estimate of an empty trace");
  double sum = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (event(trace.point(i))) sum += weights[ladder.ring_index(trace.energy(i))];
  }
  return sum / static_cast<double>(trace.size());
}

double ee_ring_weighted_estimator(std::span<const Trace> chain_traces, const Ladder& ladder,
                                  const StateFunction& g) {
  if (chain_traces.empty() || chain_traces[0].empty())
    throw UndefinedEstimateError("ring-weighted estimate needs chain-0 samples");
  if (chain_traces.size() > ladder.chain_count())
    throw std::invalid_argument("more traces than ladder chains");

  const std::size_t chains = chain_traces.size();
  std::size_t total = 0;
  for (const Trace& trace : chain_traces) total += trace.size();

  // Chain k's unnormalized density at sample s is exp(shift[s]) * rel[s * chains + k],
  // with rel <= 1 and equal to 1 for at least one chain.
  std::vector<double> rel(total * chains);
  std::vector<double> shift(total);
  std::vector<double> energy(total);
  {
    std::size_t s = 0;
    for (const Trace& trace : chain_traces) {
      for (double h : trace.energies()) {
        double top = kNegInf;
        for (std::size_t k = 0; k < chains; ++k) {
          rel[s * chains + k] = -std::max(h, ladder.level(k)) / ladder.temperature(k);
          top = std::max(top, rel[s * chains + k]);
        }
        for (std::size_t k = 0; k < chains; ++k) rel[s * chains + k] = std::exp(rel[s * chains + k] - top);
        shift[s] = top;
        energy[s] = h;
        ++s;
      }
    }
  }

  // Self-consistent normalizers Z_k = sum_s pi_k(x_s) / sum_i n_i pi_i(x_s) / Z_i,
  // pinned at Z_0 = 1; coef[i] = n_i / Z_i.
  std::vector<double> coef(chains, 0.0);
  for (std::size_t i = 0; i < chains; ++i) coef[i] = static_cast<double>(chain_traces[i].size());
  std::vector<double> mix(total);
  std::vector<double> z(chains);
  constexpr int kMaxSweeps = 10000;
  auto mixture = [&](std::size_t s) {
    double d = 0.0;
    for (std::size_t i = 0; i < chains; ++i) d += coef[i] * rel[s * chains + i];
    return d;
  };
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t s = 0; s < total; ++s) {
      const double d = mixture(s);
      for (std::size_t k = 0; k < chains; ++k) z[k] += rel[s * chains + k] / d;
    }
    double change = 0.0;
    for (std::size_t k = 0; k < chains; ++k) {
      if (chain_traces[k].empty()) continue;
      const double next = static_cast<double>(chain_traces[k].size()) * z[0] / z[k];
      change = std::max(change, std::abs(std::log(next / coef[k])));
      coef[k] = next;
    }
    if (!(change >= 1e-11)) break;
  }

  std::vector<double> log_w(total);
  double max_log_w = kNegInf;
  for (std::size_t s = 0; s < total; ++s) {
    log_w[s] = -energy[s] / ladder.temperature(0) - shift[s] - std::log(mixture(s));
    max_log_w = std::max(max_log_w, log_w[s]);
  }
  if (!std::isfinite(max_log_w))
    throw DegenerateWeightsError("importance weights are degenerate", max_log_w);

  double num = 0.0;
  double den = 0.0;
  std::size_t s = 0;
  for (const Trace& trace : chain_traces) {
    for (std::size_t t = 0; t < trace.size(); ++t, ++s) {
      const double w = std::exp(log_w[s] - max_log_w);
      num += w * g(trace.point(t));
      den += w;
    }
  }
  if (!(den > 0.0) || !std::isfinite(den))
    throw DegenerateWeightsError("importance weights sum to zero (max log-weight " +
                                     std::to_string(max_log_w) + ")",
                                 max_log_w);
  return num / den;
}

std::size_t count_mode_jumps(const Trace& trace, std::span<const Mode> modes) {
  if (modes.empty()) throw std::invalid_argument("need at least one mode");
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::size_t last = kNone;
  std::size_t jumps = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::size_t label = kNone;
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const double r = modes[m].basin_radius;
      if (squared_distance(trace.point(i), modes[m].center) < r * r) {
        label = m;
        break;
      }
    }
    if (label == kNone) continue;
    if (last != kNone && label != last) ++jumps;
    last = label;
  }
  return jumps;
}

double nearest_rank_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw UndefinedEstimateError("quantile of no values");
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level must lie in (0, 1]");
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

AggregateSummary aggregate(std::span<const RunSummary> runs, double truth) {
  if (runs.empty()) throw UndefinedEstimateError("aggregate of no replicates");
  if (!(truth >= 0.0 && truth <= 1.0)) throw std::invalid_argument("truth must lie in [0, 1]");

  AggregateSummary out;
  out.n = runs.size();
  const double n = static_cast<double>(out.n);
  std::vector<double> p;
  p.reserve(runs.size());
  double jumps = 0.0;
  for (const auto& r : runs) {
    p.push_back(r.p_hat);
    jumps += static_cast<double>(r.jumps);
    out.miss_count += r.miss;
  }
  out.mean = std::accumulate(p.begin(), p.end(), 0.0) / n;
  double ss = 0.0;
  double se = 0.0;
  for (double v : p) {
    ss += (v - out.mean) * (v - out.mean);
    se += (v - truth) * (v - truth);
  }
  out.std_defined = out.n >= 2;
  out.std = out.std_defined ? std::sqrt(ss / (n - 1.0)) : 0.0;
  out.mse = se / n;
  out.q05 = nearest_rank_quantile(p, 0.05);
  out.q95 = nearest_rank_quantile(p, 0.95);
  out.jump_mean = jumps / n;
  return out;
}

}  // namespace eesampler
