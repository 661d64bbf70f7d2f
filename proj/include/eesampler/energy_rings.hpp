#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eesampler/ladder.hpp"
#include "eesampler/random.hpp"

namespace eesampler {

/// A stored record; `x` views memory owned by the ring store and is only
/// valid until the next insert into that store.
struct RingRecord {
  std::span<const double> x;
  double energy = 0.0;
};

struct RingOccupancy {
  std::size_t size = 0;
  std::size_t insert_count = 0;
  bool operator==(const RingOccupancy&) const = default;
};

/// What a full bounded ring does with a new record.
enum class EvictionPolicy {
  replace_random,  // always overwrite a uniformly chosen slot
  reservoir,       // keep the n-th record with probability capacity / n, then overwrite uniformly
};

/// Per-ring sample buffers for one chain, optionally bounded per ring.
///
/// Exactly one chain writes a store; readers only run between writes, so a
/// sample never observes a partially written record.
class EnergyRings {
 public:
  /// `capacity` of std::nullopt means unbounded.
  EnergyRings(Ladder ladder, std::size_t dimension,
              std::optional<std::size_t> capacity = std::nullopt,
              EvictionPolicy policy = EvictionPolicy::replace_random);

  /// Stores the record in ring ring_index(energy). Returns the overwritten
  /// slot when a full ring evicted one, std::nullopt otherwise.
  std::optional<std::size_t> insert(std::span<const double> x, double energy, Rng& rng);

  /// Uniform draw from ring j, or std::nullopt if ring j is empty.
  std::optional<RingRecord> sample_uniform(std::size_t j, Rng& rng) const;

  std::size_t ring_count() const noexcept { return rings_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  std::optional<std::size_t> capacity() const noexcept { return capacity_; }
  EvictionPolicy policy() const noexcept { return policy_; }
  const Ladder& ladder() const noexcept { return ladder_; }

  std::size_t size(std::size_t j) const { return rings_.at(j).energies.size(); }
  std::size_t insert_count(std::size_t j) const { return rings_.at(j).inserts; }
  RingRecord record(std::size_t j, std::size_t slot) const;

  std::vector<RingOccupancy> occupancy() const;

  /// One CSV per ring, `<prefix>ring_<j>.csv`, columns coord_1..coord_d,energy.
  void write_csv(const std::filesystem::path& dir, const std::string& prefix) const;

 private:
  struct Ring {
    std::vector<double> coords;  // row-major, dimension_ per record
    std::vector<double> energies;
    std::size_t inserts = 0;
  };

  Ladder ladder_;
  std::size_t dimension_;
  std::optional<std::size_t> capacity_;
  EvictionPolicy policy_;
  std::vector<Ring> rings_;
};

/// Draws a ring index m in [0, k_max] with probability proportional to
/// rho^|m - j|. rho = 0 always returns j.
std::size_t cross_ring_proposal_index(std::size_t j, std::size_t k_max, double rho, Rng& rng);

/// Probability that cross_ring_proposal_index(j, k_max, rho) returns m.
double cross_ring_probability(std::size_t m, std::size_t j, std::size_t k_max, double rho);

}  // namespace eesampler
