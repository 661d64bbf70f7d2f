#include "eesampler/csv.hpp"

#include <charconv>
#include <cmath>

namespace eesampler::csv {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_coord_header(std::ostream& out, std::size_t dimension, bool with_iter) {
  if (with_iter) out << "iter,";
  for (std::size_t j = 1; j <= dimension; ++j) out << "coord_" << j << ',';
  out << "energy\n";
}

void write_row(std::ostream& out, std::span<const double> x, double energy) {
  for (double v : x) out << format_number(v) << ',';
  out << format_number(energy) << '\n';
}

void write_row(std::ostream& out, std::size_t iter, std::span<const double> x, double energy) {
  out << iter << ',';
  write_row(out, x, energy);
}

}  // namespace eesampler::csv
