#include "eesampler/ladder.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "eesampler/errors.hpp"

namespace eesampler {

Ladder::Ladder(std::vector<double> energy_levels, std::vector<double> temperatures)
    : energy_levels_(std::move(energy_levels)), temperatures_(std::move(temperatures)) {
  if (energy_levels_.empty()) throw InvalidLadderError("ladder needs at least one energy level");
  if (energy_levels_.size() != temperatures_.size())
    throw InvalidLadderError("ladder needs one temperature per energy level");
  for (std::size_t i = 0; i < energy_levels_.size(); ++i) {
    if (!std::isfinite(energy_levels_[i]) || !std::isfinite(temperatures_[i]))
      throw InvalidLadderError("ladder entries must be finite");
    if (i > 0 && !(energy_levels_[i] > energy_levels_[i - 1]))
      throw InvalidLadderError("energy levels must be strictly increasing");
    if (i > 0 && temperatures_[i] < temperatures_[i - 1])
      throw InvalidLadderError("temperatures must be non-decreasing");
  }
  if (std::abs(temperatures_.front() - 1.0) > 1e-12)
    throw InvalidLadderError("T_0 must be 1");
  temperatures_.front() = 1.0;
}

Ladder Ladder::single(double h_min) { return Ladder({h_min}, {1.0}); }

std::size_t Ladder::ring_index(double e) const noexcept {
  // upper_bound gives the first level > e; the ring is the one before it.
  auto it = std::upper_bound(energy_levels_.begin(), energy_levels_.end(), e);
  if (it == energy_levels_.begin()) return 0;
  return static_cast<std::size_t>(it - energy_levels_.begin()) - 1;
}

std::vector<double> geometric_energy_ladder(double h_min, double h1, double h_top,
                                            std::size_t k, double ratio) {
  if (!(h_min < h1 && h1 < h_top)) throw InvalidLadderError("need h_min < h1 < h_top");
  if (k < 1) throw InvalidLadderError("geometric ladder needs k >= 1");
  if (!(ratio >= 1.0) || !std::isfinite(ratio)) throw InvalidLadderError("ratio must be >= 1");

  // k gaps d, d r, ..., d r^(k-1) summing to h_top - h1.
  double weight_sum = 0.0;
  double power = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    weight_sum += power;
    power *= ratio;
  }
  const double first_gap = (h_top - h1) / weight_sum;

  std::vector<double> levels{h_min, h1};
  double gap = first_gap;
  for (std::size_t j = 1; j < k; ++j) {
    levels.push_back(levels.back() + gap);
    gap *= ratio;
  }
  assert(std::is_sorted(levels.begin(), levels.end()) &&
         std::adjacent_find(levels.begin(), levels.end()) == levels.end());
  return levels;
}

std::vector<double> log_uniform_temperatures(double t_top, std::size_t k) {
  if (!(t_top >= 1.0) || !std::isfinite(t_top))
    throw InvalidLadderError("top temperature must be >= 1");
  if (k == 0) {
    if (t_top != 1.0) throw InvalidLadderError("a single-chain ladder requires t_top = 1");
    return {1.0};
  }
  std::vector<double> temps(k + 1);
  const double log_top = std::log(t_top);
  for (std::size_t i = 0; i <= k; ++i)
    temps[i] = std::exp(log_top * static_cast<double>(i) / static_cast<double>(k));
  temps.front() = 1.0;
  temps.back() = t_top;
  return temps;
}

std::vector<double> coupled_temperatures(const std::vector<double>& energy_levels, double c) {
  if (!(c > 0.0)) throw InvalidLadderError("coupling constant must be positive");
  if (energy_levels.size() < 2) throw InvalidLadderError("coupled ladder needs >= 2 levels");
  const std::size_t top = energy_levels.size() - 1;
  std::vector<double> temps(top + 1);
  for (std::size_t i = 0; i < top; ++i) {
    const double gap = energy_levels[i + 1] - energy_levels[i];
    if (!(gap > 0.0)) throw InvalidLadderError("energy levels must be strictly increasing");
    temps[i] = gap / c;
  }
  temps[top] = top >= 2 ? temps[top - 1] * (temps[top - 1] / temps[top - 2]) : temps[0];
  for (std::size_t i = 1; i <= top; ++i) {
    if (temps[i] < temps[i - 1])
      throw InvalidLadderError("coupled temperatures are not monotone (T_" + std::to_string(i) +
                               " < T_" + std::to_string(i - 1) + ")");
  }
  return temps;
}

}  // namespace eesampler
