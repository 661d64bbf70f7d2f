#pragma once

#include <cstddef>
#include <span>

#include "eesampler/random.hpp"

namespace eesampler {

/// Local exploration move used between equi-energy jumps. Proposals must be
/// symmetric, q(x -> y) = q(y -> x); acceptance is applied by the engine.
class LocalKernel {
 public:
  virtual ~LocalKernel() = default;

  /// Writes a proposal from `x` into `out`. `scale` is tau_i * sqrt(T_i)
  /// for chain i.
  virtual void propose(std::span<const double> x, double scale, Rng& rng,
                       std::span<double> out) const = 0;
};

/// y = x + scale * z with z standard normal in every coordinate.
class GaussianRandomWalk final : public LocalKernel {
 public:
  void propose(std::span<const double> x, double scale, Rng& rng,
               std::span<double> out) const override;
};

/// Moves on the states 0..n-1 of a cycle by +/- s, s uniform on 1..max_step.
/// For DiscreteGrid::line targets; `scale` is ignored.
class CyclicLineWalk final : public LocalKernel {
 public:
  CyclicLineWalk(std::size_t n_states, std::size_t max_step);

  void propose(std::span<const double> x, double scale, Rng& rng,
               std::span<double> out) const override;

 private:
  std::size_t n_states_;
  std::size_t max_step_;
};

}  // namespace eesampler
