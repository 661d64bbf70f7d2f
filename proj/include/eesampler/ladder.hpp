#pragma once

#include <cstddef>
#include <vector>

namespace eesampler {

/// Paired energy levels H_0 < H_1 < ... < H_K and temperatures
/// 1 = T_0 <= T_1 <= ... <= T_K. Chain i targets
/// exp(-max(h(x), H_i) / T_i); ring D_j is [H_j, H_{j+1}), the top ring is
/// [H_K, inf), and energies below H_0 fall into ring 0.
class Ladder {
 public:
  /// Throws InvalidLadderError when either sequence breaks its ordering,
  /// the lengths differ, or T_0 != 1.
  Ladder(std::vector<double> energy_levels, std::vector<double> temperatures);

  /// Single-chain ladder: plain Metropolis on the target.
  static Ladder single(double h_min);

  /// K: index of the hottest chain.
  std::size_t top() const noexcept { return energy_levels_.size() - 1; }
  std::size_t chain_count() const noexcept { return energy_levels_.size(); }

  double level(std::size_t i) const { return energy_levels_.at(i); }
  double temperature(std::size_t i) const { return temperatures_.at(i); }
  const std::vector<double>& energy_levels() const noexcept { return energy_levels_; }
  const std::vector<double>& temperatures() const noexcept { return temperatures_; }

  /// Largest j with H_j <= e, clamped to 0 below H_0.
  std::size_t ring_index(double e) const noexcept;

 private:
  std::vector<double> energy_levels_;
  std::vector<double> temperatures_;
};

/// H_0 = h_min, H_1 = h1, and gaps H_{j+1} - H_j growing by `ratio`, scaled
/// so that k gaps starting at H_1 end exactly at h_top. Returns k + 1 levels.
std::vector<double> geometric_energy_ladder(double h_min, double h1, double h_top,
                                            std::size_t k, double ratio);

/// T_i = t_top^(i/k), i = 0..k. For k = 0 returns {1} and requires t_top == 1.
std::vector<double> log_uniform_temperatures(double t_top, std::size_t k);

/// T_i = (H_{i+1} - H_i) / c for i < K, with T_K extrapolated geometrically
/// from the last two (or copied from T_0 when K == 1). The result is not
/// rescaled to T_0 = 1. Throws InvalidLadderError if it is not monotone.
std::vector<double> coupled_temperatures(const std::vector<double>& energy_levels, double c);

}  // namespace eesampler
