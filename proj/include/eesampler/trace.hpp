#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace eesampler {

/// Sequence of visited states with their energies, stored row-major.
class Trace {
 public:
  explicit Trace(std::size_t dimension = 0) : dimension_(dimension) {}

  void reserve(std::size_t n) {
    coords_.reserve(n * dimension_);
    energies_.reserve(n);
  }

  void push_back(std::span<const double> x, double energy) {
    coords_.insert(coords_.end(), x.begin(), x.end());
    energies_.push_back(energy);
  }

  std::size_t size() const noexcept { return energies_.size(); }
  bool empty() const noexcept { return energies_.empty(); }
  std::size_t dimension() const noexcept { return dimension_; }

  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(coords_).subspan(i * dimension_, dimension_);
  }
  double energy(std::size_t i) const { return energies_[i]; }
  const std::vector<double>& energies() const noexcept { return energies_; }

  bool operator==(const Trace&) const = default;

  /// Columns iter,coord_1..coord_d,energy; iter counts from 0 after burn-in.
  void write_csv(const std::filesystem::path& path) const;

 private:
  std::size_t dimension_;
  std::vector<double> coords_;
  std::vector<double> energies_;
};

}  // namespace eesampler
