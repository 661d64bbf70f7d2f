#include "eesampler/local_kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "eesampler/errors.hpp"

namespace eesampler {

void GaussianRandomWalk::propose(std::span<const double> x, double scale, Rng& rng,
                                 std::span<double> out) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + scale * normal(rng);
}

CyclicLineWalk::CyclicLineWalk(std::size_t n_states, std::size_t max_step)
    : n_states_(n_states), max_step_(max_step) {
  if (n_states_ < 2) throw std::invalid_argument("cyclic walk needs >= 2 states");
  if (max_step_ < 1 || 2 * max_step_ >= n_states_)
    throw std::invalid_argument("cyclic walk step must lie in [1, n/2)");
}

void CyclicLineWalk::propose(std::span<const double> x, double /*scale*/, Rng& rng,
                             std::span<double> out) const {
  if (x.size() != 1) throw InvalidStateError("cyclic walk works on 1-D line states");
  const auto at = static_cast<std::size_t>(x[0]);
  std::uniform_int_distribution<std::size_t> step(1, max_step_);
  const std::size_t s = step(rng);
  const bool forward = uniform01(rng) < 0.5;
  const std::size_t next = forward ? (at + s) % n_states_ : (at + n_states_ - s) % n_states_;
  out[0] = static_cast<double>(next);
}

}  // namespace eesampler
