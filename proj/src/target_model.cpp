#include "eesampler/target_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <string>

#include "eesampler/errors.hpp"

namespace eesampler {

namespace {

void require_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw InvalidStateError("state has a non-finite coordinate");
  }
}

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

State TargetModel::initial_state(Rng& rng, double scale) const {
  std::normal_distribution<double> normal(0.0, scale);
  State x(dimension());
  for (auto& v : x) v = normal(rng);
  return x;
}

// ---------------------------------------------------------------------------

GaussianMixture::GaussianMixture(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("mixture needs at least one component");
  dimension_ = components_.front().mean.size();
  if (dimension_ == 0) throw std::invalid_argument("mixture dimension must be >= 1");

  double total = 0.0;
  for (const auto& c : components_) {
    if (c.mean.size() != dimension_)
      throw std::invalid_argument("mixture component means differ in dimension");
    if (!(c.weight > 0.0 && c.weight <= 1.0))
      throw std::invalid_argument("mixture weight must lie in (0, 1]");
    if (!(c.variance > 0.0) || !std::isfinite(c.variance))
      throw std::invalid_argument("mixture variance must be positive");
    for (double m : c.mean) {
      if (!std::isfinite(m)) throw std::invalid_argument("mixture mean must be finite");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("mixture weights must sum to 1");

  const double d = static_cast<double>(dimension_);
  for (const auto& c : components_) {
    log_norm_.push_back(std::log(c.weight) -
                        0.5 * d * std::log(2.0 * std::numbers::pi * c.variance));
    inv_two_var_.push_back(0.5 / c.variance);
    modes_.push_back({c.mean, 3.0 * std::sqrt(c.variance)});
  }
}

double GaussianMixture::energy(std::span<const double> x) const {
  if (x.size() != dimension_) throw InvalidStateError("state dimension mismatch");
  require_finite(x);

  // Two components is the common case; avoid a heap buffer.
  double terms_small[4];
  std::vector<double> terms_big;
  double* terms = terms_small;
  if (components_.size() > 4) {
    terms_big.resize(components_.size());
    terms = terms_big.data();
  }

  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const auto& mean = components_[k].mean;
    double sq = 0.0;
    for (std::size_t j = 0; j < dimension_; ++j) {
      const double diff = x[j] - mean[j];
      sq += diff * diff;
    }
    terms[k] = log_norm_[k] - sq * inv_two_var_[k];
    top = std::max(top, terms[k]);
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) sum += std::exp(terms[k] - top);
  return -(top + std::log(sum));
}

double GaussianMixture::min_energy_at_means() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : components_) best = std::min(best, energy(c.mean));
  return best;
}

// ---------------------------------------------------------------------------

DiscreteGrid::DiscreteGrid(std::vector<State> states, std::vector<double> energies) {
  if (states.empty()) throw std::invalid_argument("grid needs at least one state");
  if (states.size() != energies.size())
    throw std::invalid_argument("grid needs one energy per state");
  dimension_ = states.front().size();
  if (dimension_ == 0) throw std::invalid_argument("grid dimension must be >= 1");

  std::vector<std::size_t> order(states.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(states[a], states[b]); });
  for (std::size_t i : order) {
    if (states[i].size() != dimension_) throw std::invalid_argument("grid states differ in dimension");
    if (!std::isfinite(energies[i])) throw std::invalid_argument("grid energies must be finite");
    require_finite(states[i]);
    if (!states_.empty() && !lex_less(states_.back(), states[i]))
      throw std::invalid_argument("grid states must be distinct");
    states_.push_back(std::move(states[i]));
    energies_.push_back(energies[i]);
  }
}

DiscreteGrid DiscreteGrid::line(std::vector<double> energies) {
  std::vector<State> states;
  states.reserve(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) states.push_back({static_cast<double>(i)});
  return DiscreteGrid(std::move(states), std::move(energies));
}

std::size_t DiscreteGrid::index_of(std::span<const double> x) const {
  if (x.size() != dimension_) throw InvalidStateError("state dimension mismatch");
  require_finite(x);
  auto it = std::lower_bound(states_.begin(), states_.end(), x,
                             [](const State& s, std::span<const double> v) { return lex_less(s, v); });
  if (it == states_.end() || lex_less(x, *it)) throw InvalidStateError("state is not in the grid");
  return static_cast<std::size_t>(it - states_.begin());
}

double DiscreteGrid::energy(std::span<const double> x) const { return energies_[index_of(x)]; }

State DiscreteGrid::initial_state(Rng& rng, double /*scale*/) const {
  std::uniform_int_distribution<std::size_t> pick(0, states_.size() - 1);
  return states_[pick(rng)];
}

std::vector<double> DiscreteGrid::boltzmann(double temperature) const {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  const double lowest = *std::min_element(energies_.begin(), energies_.end());
  std::vector<double> p(energies_.size());
  double z = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(-(energies_[i] - lowest) / temperature);
    z += p[i];
  }
  for (auto& v : p) v /= z;
  return p;
}

// ---------------------------------------------------------------------------

double needle_variance() { return 0.5 / (2.0 * std::numbers::pi * std::exp(7.0)); }

GaussianMixture make_needle_target() {
  return GaussianMixture({{0.5, {0.0, 0.0}, needle_variance()}, {0.5, {5.0, 5.0}, 1.0}});
}

}  // namespace eesampler
