#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>

namespace eesampler::csv {

/// Shortest round-trippable decimal form of `v`.
std::string format_number(double v);

/// Writes `[iter,]coord_1,...,coord_d,energy`.
void write_coord_header(std::ostream& out, std::size_t dimension, bool with_iter);

void write_row(std::ostream& out, std::span<const double> x, double energy);
void write_row(std::ostream& out, std::size_t iter, std::span<const double> x, double energy);

}  // namespace eesampler::csv
