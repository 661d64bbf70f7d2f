#include "eesampler/energy_rings.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "eesampler/csv.hpp"

namespace eesampler {

EnergyRings::EnergyRings(Ladder ladder, std::size_t dimension,
                         std::optional<std::size_t> capacity, EvictionPolicy policy)
    : ladder_(std::move(ladder)), dimension_(dimension), capacity_(capacity), policy_(policy) {
  if (dimension_ == 0) throw std::invalid_argument("ring dimension must be >= 1");
  if (capacity_ && *capacity_ == 0) throw std::invalid_argument("ring capacity must be positive");
  rings_.resize(ladder_.chain_count());
}

std::optional<std::size_t> EnergyRings::insert(std::span<const double> x, double energy, Rng& rng) {
  if (x.size() != dimension_) throw std::invalid_argument("record dimension mismatch");
  Ring& ring = rings_[ladder_.ring_index(energy)];
  ++ring.inserts;
  if (!capacity_ || ring.energies.size() < *capacity_) {
    ring.coords.insert(ring.coords.end(), x.begin(), x.end());
    ring.energies.push_back(energy);
    return std::nullopt;
  }
  if (policy_ == EvictionPolicy::reservoir) {
    std::uniform_int_distribution<std::size_t> draw(0, ring.inserts - 1);
    if (draw(rng) >= *capacity_) return std::nullopt;
  }
  std::uniform_int_distribution<std::size_t> pick(0, ring.energies.size() - 1);
  const std::size_t slot = pick(rng);
  std::copy(x.begin(), x.end(), ring.coords.begin() + static_cast<std::ptrdiff_t>(slot * dimension_));
  ring.energies[slot] = energy;
  return slot;
}

std::optional<RingRecord> EnergyRings::sample_uniform(std::size_t j, Rng& rng) const {
  const Ring& ring = rings_.at(j);
  if (ring.energies.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, ring.energies.size() - 1);
  return record(j, pick(rng));
}

RingRecord EnergyRings::record(std::size_t j, std::size_t slot) const {
  const Ring& ring = rings_.at(j);
  if (slot >= ring.energies.size()) throw std::out_of_range("ring slot out of range");
  return {std::span<const double>(ring.coords).subspan(slot * dimension_, dimension_),
          ring.energies[slot]};
}

std::vector<RingOccupancy> EnergyRings::occupancy() const {
  std::vector<RingOccupancy> out;
  out.reserve(rings_.size());
  for (const auto& r : rings_) out.push_back({r.energies.size(), r.inserts});
  return out;
}

void EnergyRings::write_csv(const std::filesystem::path& dir, const std::string& prefix) const {
  for (std::size_t j = 0; j < rings_.size(); ++j) {
    const auto path = dir / (prefix + "ring_" + std::to_string(j) + ".csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    csv::write_coord_header(out, dimension_, false);
    for (std::size_t s = 0; s < rings_[j].energies.size(); ++s) {
      const auto rec = record(j, s);
      csv::write_row(out, rec.x, rec.energy);
    }
  }
}

// ---------------------------------------------------------------------------

double cross_ring_probability(std::size_t m, std::size_t j, std::size_t k_max, double rho) {
  if (j > k_max || m > k_max) throw std::out_of_range("ring index out of range");
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
  if (rho == 0.0) return m == j ? 1.0 : 0.0;
  double norm = 0.0;
  for (std::size_t r = 0; r <= k_max; ++r)
    norm += std::pow(rho, static_cast<double>(r > j ? r - j : j - r));
  return std::pow(rho, static_cast<double>(m > j ? m - j : j - m)) / norm;
}

std::size_t cross_ring_proposal_index(std::size_t j, std::size_t k_max, double rho, Rng& rng) {
  if (j > k_max) throw std::out_of_range("ring index out of range");
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
  if (rho == 0.0 || k_max == 0) return j;
  std::vector<double> weights(k_max + 1);
  for (std::size_t r = 0; r <= k_max; ++r)
    weights[r] = std::pow(rho, static_cast<double>(r > j ? r - j : j - r));
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  return pick(rng);
}

}  // namespace eesampler
