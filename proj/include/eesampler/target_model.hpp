#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eesampler/random.hpp"

namespace eesampler {

using State = std::vector<double>;

/// Diagnostic basin around a mode: ||x - center|| < basin_radius.
struct Mode {
  State center;
  double basin_radius = 0.0;
};

/// A target distribution pi(x) ~ exp(-h(x)) over a continuous or finite
/// state space. Implementations are immutable after construction.
class TargetModel {
 public:
  virtual ~TargetModel() = default;

  virtual std::size_t dimension() const noexcept = 0;

  /// h(x) = -log(unnormalized density). Throws InvalidStateError for
  /// non-finite coordinates or states outside the support.
  virtual double energy(std::span<const double> x) const = 0;

  virtual bool is_discrete() const noexcept { return false; }

  /// Starting point for a chain. Continuous targets draw from an isotropic
  /// Gaussian with standard deviation `scale` around the origin.
  virtual State initial_state(Rng& rng, double scale) const;

  const std::vector<Mode>& modes() const noexcept { return modes_; }

 protected:
  std::vector<Mode> modes_;
};

struct MixtureComponent {
  double weight = 1.0;
  State mean;
  double variance = 1.0;
};

/// Mixture of isotropic Gaussians. Energies are evaluated with
/// log-sum-exp, so they stay finite far from every component.
class GaussianMixture final : public TargetModel {
 public:
  explicit GaussianMixture(std::vector<MixtureComponent> components);

  std::size_t dimension() const noexcept override { return dimension_; }
  double energy(std::span<const double> x) const override;

  const std::vector<MixtureComponent>& components() const noexcept {
    return components_;
  }

  /// Smallest energy over the component means; the usual estimate of h_min.
  double min_energy_at_means() const;

 private:
  std::vector<MixtureComponent> components_;
  std::vector<double> log_norm_;  // log w_k - d/2 log(2 pi sigma_k^2)
  std::vector<double> inv_two_var_;
  std::size_t dimension_ = 0;
};

/// Finite state space with an explicit energy per state.
class DiscreteGrid final : public TargetModel {
 public:
  DiscreteGrid(std::vector<State> states, std::vector<double> energies);

  /// States (0), (1), ..., (n-1) on a line.
  static DiscreteGrid line(std::vector<double> energies);

  std::size_t dimension() const noexcept override { return dimension_; }
  double energy(std::span<const double> x) const override;
  bool is_discrete() const noexcept override { return true; }
  /// Uniform over the listed states; `scale` is ignored.
  State initial_state(Rng& rng, double scale) const override;

  std::size_t size() const noexcept { return states_.size(); }
  const State& state(std::size_t i) const { return states_.at(i); }
  double energy_at(std::size_t i) const { return energies_.at(i); }

  /// Index of `x` in the state list; throws InvalidStateError if absent.
  std::size_t index_of(std::span<const double> x) const;

  /// Exact normalized probabilities proportional to exp(-energy / temperature).
  std::vector<double> boltzmann(double temperature = 1.0) const;

 private:
  std::vector<State> states_;     // sorted lexicographically
  std::vector<double> energies_;  // aligned with states_
  std::size_t dimension_ = 0;
};

/// Two-component needle-in-the-haystack mixture: weight 0.5 at the origin
/// with variance 0.5 / (2 pi e^7) (so the minimum energy is -7), and weight
/// 0.5 at (5, 5) with unit variance.
GaussianMixture make_needle_target();

/// Variance of the needle component in make_needle_target().
double needle_variance();

}  // namespace eesampler
